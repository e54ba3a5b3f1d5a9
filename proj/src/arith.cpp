#include "twistrank/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>

namespace twistrank {

namespace {

constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialDivisionLimit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint64_t i = 2; i <= kTrialDivisionLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kTrialDivisionLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

// Jaeschke / Zhang bound: the first 13 prime bases are deterministic below this.
const Integer& deterministic_limit() {
    static const Integer limit("3317044064679887385961981");
    return limit;
}

bool miller_rabin_round(const Integer& n, const Integer& n_minus_1, const Integer& d,
                        unsigned s, const Integer& base) {
    Integer x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

Integer brent_rho(const Integer& n, unsigned long c) {
    auto step = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    Integer y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    constexpr unsigned long m = 128;
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = step(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            unsigned long limit = std::min(m, r - k);
            for (unsigned long i = 0; i < limit; ++i) {
                y = step(y);
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

void split_into(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Integer root = sqrt(n);
        split_into(root, out);
        split_into(root, out);
        return;
    }
    Integer factor = n;
    for (unsigned long c = 1; factor == n || factor == 1; ++c) factor = brent_rho(n, c);
    split_into(factor, out);
    split_into(n / factor, out);
}

}  // namespace

Integer Factorization::product() const {
    Integer out = sign;
    for (const auto& [prime, exponent] : factors) {
        Integer power;
        mpz_pow_ui(power.get_mpz_t(), prime.get_mpz_t(), exponent);
        out *= power;
    }
    return out;
}

unsigned Factorization::max_exponent() const {
    unsigned best = 0;
    for (const auto& f : factors) best = std::max(best, f.exponent);
    return best;
}

Integer parse_integer(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start ||
        !std::all_of(s.begin() + start, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

int jacobi(const Integer& a, const Integer& m) {
    if (m <= 0 || mpz_even_p(m.get_mpz_t())) {
        throw std::invalid_argument("jacobi: modulus must be odd and positive");
    }
    int result = 1;
    Integer x = a;
    Integer n = m;
    if (x < 0) {
        x = -x;
        if (mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
    }
    x %= n;
    while (x != 0) {
        unsigned long twos = mpz_scan1(x.get_mpz_t(), 0);
        if (twos > 0) {
            x >>= twos;
            unsigned long r8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if ((twos & 1) && (r8 == 3 || r8 == 5)) result = -result;
        }
        std::swap(x, n);
        if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) {
            result = -result;
        }
        x %= n;
    }
    return n == 1 ? result : 0;
}

bool is_prime(const Integer& value) {
    Integer n = abs(value);
    if (n < 2) return false;
    static constexpr std::array<unsigned, 13> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned p : bases) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Integer n_minus_1 = n - 1;
    unsigned s = static_cast<unsigned>(mpz_scan1(n_minus_1.get_mpz_t(), 0));
    Integer d = n_minus_1 >> s;

    if (n < deterministic_limit()) {
        for (unsigned p : bases) {
            if (!miller_rabin_round(n, n_minus_1, d, s, Integer(p))) return false;
        }
        return true;
    }
    // Seeded so repeated calls agree.
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0x5eed);
    Integer span = n - 3;
    for (int round = 0; round < 64; ++round) {
        Integer base = rng.get_z_range(span) + 2;
        if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
    }
    return true;
}

Factorization factorize(const Integer& n) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    Factorization out;
    out.value = n;
    out.sign = n < 0 ? -1 : 1;
    Integer rest = abs(n);

    std::map<Integer, unsigned> found;
    for (std::uint32_t p : small_primes()) {
        if (rest == 1) break;
        if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            found[Integer(p)] = e;
        }
    }
    split_into(rest, found);
    for (auto& [prime, exponent] : found) out.factors.push_back({prime, exponent});
    return out;
}

unsigned valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("valuation: n must be nonzero");
    if (!is_prime(p) || p < 0) throw std::invalid_argument("valuation: p must be a positive prime");
    Integer rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

bool lemma_divisor_criterion(const Integer& n, const Integer& p, const Integer& x,
                             const Integer& y) {
    if (n == 0) throw std::invalid_argument("lemma_divisor_criterion: n must be nonzero");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("lemma_divisor_criterion: p must be an odd prime");
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        throw std::invalid_argument("lemma_divisor_criterion: p divides n");
    }
    if (gcd(x, y) != 1) throw std::invalid_argument("lemma_divisor_criterion: gcd(x, y) != 1");
    Integer form = x * x + n * y * y;
    return mpz_divisible_p(form.get_mpz_t(), p.get_mpz_t()) != 0;
}

bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    return factorize(n).max_exponent() <= 1;
}

bool is_fourth_power_free(const Integer& n) {
    if (n == 0) return false;
    return factorize(n).max_exponent() <= 3;
}

Integer squarefree_kernel(const Integer& n) {
    Factorization f = factorize(n);
    Integer out = f.sign;
    for (const auto& [prime, exponent] : f.factors) {
        if (exponent % 2 == 1) out *= prime;
    }
    return out;
}

std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 3) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        if (i > 2) out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace twistrank
