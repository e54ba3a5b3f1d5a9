#include "twistrank/rootnumber.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace twistrank {

const char* to_string(Parity parity) {
    return parity == Parity::Odd ? "Odd" : "Even";
}

int epsilon(const Integer& n) {
    if (n <= 0) throw std::domain_error("epsilon: n must be positive");
    unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 16);
    switch (r) {
        case 1: case 3: case 11: case 13:
            return -1;
        case 2: case 5: case 6: case 7: case 9: case 10: case 14: case 15:
            return 1;
        default:
            throw std::domain_error("epsilon: undefined for n = 0 mod 4");
    }
}

int omega(const Integer& n) {
    if (n <= 0) throw std::domain_error("omega: n must be positive");
    if (mpz_divisible_ui_p(n.get_mpz_t(), 4)) throw std::domain_error("omega: undefined for n = 0 mod 4");
    Factorization f = factorize(n);
    int product = 1;
    for (const auto& [l, exponent] : f.factors) {
        if (exponent >= 4) throw std::domain_error("omega: n is not fourth-power-free (" + l.get_str() + "^4 divides n)");
        if (exponent == 3) {
            throw std::domain_error("omega: cubed prime factor " + l.get_str() + " is outside the formula");
        }
        if (exponent == 2 && l != 2) product *= jacobi(Integer(-1), l);
    }
    // sgn(-n) = -1 for positive n.
    return -epsilon(n) * product;
}

namespace {

std::string case_label(bool n_odd, unsigned long p_mod_8) {
    if (n_odd) {
        switch (p_mod_8) {
            case 5: return "3.1(i)a";
            case 7: return "3.1(i)b";
            case 1: return "3.1(ii)a";
            default: return "3.1(ii)b";
        }
    }
    switch (p_mod_8) {
        case 5: return "3.2(i)a";
        case 1: return "3.2(i)b";
        case 7: return "3.2(ii)a";
        default: return "3.2(ii)b";
    }
}

}  // namespace

ParityReport predict_parity(const Integer& n, const Integer& p) {
    if (n <= 0) throw std::domain_error("predict_parity: n must be positive");
    if (p == 2) throw std::domain_error("predict_parity: p must be odd");
    if (p < 3 || !is_prime(p)) throw std::domain_error("predict_parity: p must be an odd prime");
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        throw std::domain_error("predict_parity: p = " + p.get_str() + " divides n");
    }
    const unsigned long n_mod_16 = mpz_fdiv_ui(n.get_mpz_t(), 16);
    if (n_mod_16 != 1 && n_mod_16 != 2) {
        throw std::domain_error("predict_parity: n must be 1 or 2 mod 16 (got " + std::to_string(n_mod_16) + ")");
    }
    for (const auto& [l, exponent] : factorize(n).factors) {
        if (exponent == 2 && l != 2 && mpz_fdiv_ui(l.get_mpz_t(), 4) != 1) {
            throw std::domain_error("predict_parity: " + l.get_str() + "^2 exactly divides n but " + l.get_str() +
                                    " is not 1 mod 4");
        }
    }

    const bool n_odd = n_mod_16 == 1;
    const unsigned long p_mod_8 = mpz_fdiv_ui(p.get_mpz_t(), 8);
    ParityReport report;
    report.n = n;
    report.p = p;
    report.theorem_case = case_label(n_odd, p_mod_8);
    const bool odd = n_odd ? (p_mod_8 == 5 || p_mod_8 == 7) : (p_mod_8 % 4 == 1);
    report.predicted_parity = odd ? Parity::Odd : Parity::Even;
    report.omega = omega(n * p * p);
    report.consistent = (report.omega == -1) == odd;
    return report;
}

std::vector<TableRow> parity_table(const Integer& n, const Integer& p_max, unsigned workers) {
    if (p_max < 3) return {};
    if (!p_max.fits_ulong_p() || p_max > 100'000'000) {
        throw std::invalid_argument("parity_table: p_max too large");
    }
    const std::vector<std::uint64_t> primes = odd_primes_up_to(p_max.get_ui());
    std::vector<TableRow> rows(primes.size());
    workers = std::max(1u, workers);
    {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t i = w; i < primes.size(); i += workers) {
                    Integer p = static_cast<unsigned long>(primes[i]);
                    try {
                        rows[i] = predict_parity(n, p);
                    } catch (const std::domain_error& err) {
                        rows[i] = SkippedRow{p, err.what()};
                    }
                }
            });
        }
    }
    return rows;
}

}  // namespace twistrank
