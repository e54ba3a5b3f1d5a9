#include "twistrank/descent.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "twistrank/rootnumber.hpp"
#include "exact_sqrt.hpp"

namespace twistrank {

namespace {

constexpr unsigned kInfiniteValuation = 1u << 30;
constexpr unsigned kMaxLiftDepth = 256;

unsigned val(const Integer& z, const Integer& p) {
    if (z == 0) return kInfiniteValuation;
    Integer unit;
    return static_cast<unsigned>(mpz_remove(unit.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

bool is_padic_square(const Integer& z, const Integer& p) {
    Integer unit;
    auto v = mpz_remove(unit.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
    if (v % 2 != 0) return false;
    if (p == 2) return mpz_fdiv_ui(unit.get_mpz_t(), 8) == 1;
    return jacobi(unit, p) == 1;
}

/// lead * x^4 + constant
struct BinaryQuartic {
    Integer lead;
    Integer constant;

    Integer eval(const Integer& x) const {
        Integer x2 = x * x;
        return lead * x2 * x2 + constant;
    }
    Integer derivative(const Integer& x) const { return 4 * lead * x * x * x; }
};

// Is g(z) a square in Q_p (zero included) for some z in x + p^k Z_p?
bool class_soluble(const BinaryQuartic& g, const Integer& p, const Integer& x, unsigned k, const Integer& pk,
                   unsigned depth) {
    const Integer gx = g.eval(x);
    if (gx == 0 || is_padic_square(gx, p)) return true;
    const unsigned lambda = val(gx, p);
    const unsigned mu = val(g.derivative(x), p);
    // Hensel: a root of g lies in the class.
    if (mu < k && lambda >= mu + k) return true;
    // Every value in the class has the square class of g(x).
    const unsigned margin = p == 2 ? 3 : 1;
    if (lambda + margin <= std::min(mu + k, 2 * k)) return false;
    if (depth > kMaxLiftDepth) throw std::logic_error("p-adic lifting did not terminate");
    const Integer next = pk * p;
    const unsigned long residues = p.get_ui();
    for (unsigned long t = 0; t < residues; ++t) {
        if (class_soluble(g, p, x + pk * t, k + 1, next, depth + 1)) return true;
    }
    return false;
}

bool padic_soluble(const Integer& d, const Integer& e, const Integer& p) {
    // (u : v) with v a unit: x = u/v in Z_p. Otherwise v = p y, u a unit.
    if (class_soluble(BinaryQuartic{d, e}, p, 0, 0, 1, 0)) return true;
    return class_soluble(BinaryQuartic{e, d}, p, 0, 1, p, 0);
}

LocalSolvability local_test(const Integer& d, const Integer& e, const std::vector<Integer>& primes) {
    if (d < 0 && e < 0) return {false, Place::infinite()};
    for (const auto& p : primes) {
        if (!padic_soluble(d, e, p)) return {false, Place::finite(p)};
    }
    return {true, std::nullopt};
}

std::vector<Integer> bad_primes(const Integer& de) {
    std::vector<Integer> primes{Integer(2)};
    for (const auto& f : factorize(de).factors) {
        if (f.prime != 2) primes.push_back(f.prime);
    }
    return primes;
}

void require_descent_input(const Integer& A) {
    if (A == 0) throw std::invalid_argument("descent: A must be nonzero");
    if (factorize(A).max_exponent() >= 4) throw std::invalid_argument("descent: A must be fourth-power-free");
}

unsigned long subgroup_size(const std::set<Integer>& generators) {
    std::set<Integer> group{Integer(1)};
    for (const auto& g : generators) {
        if (group.count(g)) continue;
        std::set<Integer> next = group;
        for (const auto& h : group) next.insert(squarefree_kernel(g * h));
        group = std::move(next);
    }
    return group.size();
}

unsigned log2_exact(unsigned long value) {
    if (value == 0 || (value & (value - 1)) != 0) {
        throw std::logic_error("class group size " + std::to_string(value) + " is not a power of two");
    }
    unsigned out = 0;
    while (value > 1) {
        value >>= 1;
        ++out;
    }
    return out;
}

// A torsor point (u, v) lands at x = d u^2 / v^2, so height sqrt(H) matches numerators up to H.
Integer torsor_height(const Integer& bound) {
    if (bound <= 0) return 0;
    return sqrt(bound);
}

// Torsor point -> point on y^2 = x^3 + d e x.
std::optional<Point> torsor_to_curve(const Integer& d, const GlobalPoint& gp) {
    if (gp.v == 0) return std::nullopt;
    Integer v2 = gp.v * gp.v;
    return Point(Rational(d * gp.u * gp.u, v2), Rational(d * gp.u * gp.w, v2 * gp.v));
}

}  // namespace

LocalSolvability locally_solvable(const Integer& d, const Integer& e) {
    if (d == 0 || e == 0) throw std::invalid_argument("locally_solvable: d and e must be nonzero");
    return local_test(d, e, bad_primes(d * e));
}

std::optional<GlobalPoint> find_global_point(const Integer& d, const Integer& e, const Integer& height) {
    if (!height.fits_ulong_p() || height > 1'000'000) throw std::invalid_argument("find_global_point: height too large");
    const unsigned long h = std::max(1ul, height.get_ui());
    const Integer h4 = Integer(h) * h * h * h;
    const bool fast = detail::fits_bits(d, 62) && detail::fits_bits(e, 62) &&
                      detail::fits_bits(h4 * (abs(d) + abs(e)), 125);
    const detail::i128 d128 = fast ? d.get_si() : 0, e128 = fast ? e.get_si() : 0;

    auto try_pair = [&](unsigned long u, unsigned long v) -> std::optional<GlobalPoint> {
        if (std::gcd(u, v) != 1) return std::nullopt;
        std::optional<Integer> w;
        if (fast) {
            const detail::i128 u2 = static_cast<detail::i128>(u) * u, v2 = static_cast<detail::i128>(v) * v;
            w = detail::exact_sqrt(d128 * u2 * u2 + e128 * v2 * v2);
        } else {
            const Integer U2 = Integer(u) * u, V2 = Integer(v) * v;
            w = detail::exact_sqrt(Integer(d * U2 * U2 + e * V2 * V2));
        }
        if (!w) return std::nullopt;
        return GlobalPoint{Integer(u), Integer(v), *w};
    };
    // Pairs with max(u, v) = t, so small solutions come first.
    for (unsigned long t = 1; t <= h; ++t) {
        for (unsigned long other = 0; other <= t; ++other) {
            if (auto gp = try_pair(t, other)) return gp;
            if (other != t) {
                if (auto gp = try_pair(other, t)) return gp;
            }
        }
    }
    return std::nullopt;
}

std::vector<Torsor> enumerate_torsors(const Integer& A, const Integer& height, unsigned workers) {
    require_descent_input(A);
    const Factorization f = factorize(A);
    std::vector<Integer> divisors{Integer(1)};
    for (const auto& pf : f.factors) {
        const std::size_t count = divisors.size();
        for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * pf.prime);
    }
    std::sort(divisors.begin(), divisors.end());

    std::vector<Torsor> torsors;
    for (const auto& m : divisors) {
        for (int sign : {-1, 1}) {
            Integer d = m * sign;
            torsors.push_back(Torsor{d, A / d, EverywhereLocal{}});
        }
    }
    const std::vector<Integer> primes = bad_primes(A);
    workers = std::max(1u, workers);
    {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t i = w; i < torsors.size(); i += workers) {
                    Torsor& t = torsors[i];
                    if (t.d == 1) {
                        t.status = GlobalPoint{1, 0, 1};
                        continue;
                    }
                    LocalSolvability local = local_test(t.d, t.e, primes);
                    if (!local.solvable) {
                        t.status = LocallyObstructed{*local.obstruction};
                    } else if (auto gp = find_global_point(t.d, t.e, height)) {
                        t.status = *gp;
                    }
                }
            });
        }
    }
    return torsors;
}

Integer isogenous_coefficient(const Integer& A) {
    Integer dual = -4 * A;
    if (mpz_divisible_ui_p(dual.get_mpz_t(), 16)) dual /= 16;
    return dual;
}

namespace {

unsigned long count_local(const std::vector<Torsor>& torsors) {
    return static_cast<unsigned long>(
        std::count_if(torsors.begin(), torsors.end(), [](const Torsor& t) { return t.locally_solvable(); }));
}

unsigned selmer_upper(unsigned long s, unsigned long s_dual) {
    unsigned total = log2_exact(s) + log2_exact(s_dual);
    if (total < 2) throw std::logic_error("Selmer groups miss the torsion images");
    return total - 2;
}

}  // namespace

SelmerBound selmer_bound(const Integer& A, unsigned workers) {
    require_descent_input(A);
    SelmerBound out;
    out.s = count_local(enumerate_torsors(A, 1, workers));
    out.s_dual = count_local(enumerate_torsors(isogenous_coefficient(A), 1, workers));
    out.upper = selmer_upper(out.s, out.s_dual);
    return out;
}

bool RankInterval::sha_suspect() const {
    if (upper > lower) return true;
    return root_number && ((upper % 2 == 1) != (*root_number == -1));
}

std::string RankInterval::diagnostics() const {
    std::string out;
    if (upper > lower) {
        out += "Selmer bound " + std::to_string(upper) + " exceeds found rank " + std::to_string(lower) +
               " (points beyond the search bound or nontrivial Sha[phi])";
    }
    if (root_number && ((upper % 2 == 1) != (*root_number == -1))) {
        if (!out.empty()) out += "; ";
        out += "parity of the Selmer bound disagrees with root number " + std::to_string(*root_number);
    }
    return out;
}

RankInterval rank_interval(const Integer& A, const Integer& search_bound, unsigned workers) {
    require_descent_input(A);
    const Integer height = torsor_height(search_bound);
    const Integer dual = isogenous_coefficient(A);
    const std::vector<Torsor> torsors = enumerate_torsors(A, height, workers);
    const std::vector<Torsor> dual_torsors = enumerate_torsors(dual, height, workers);

    RankInterval out;
    out.A = A;
    out.s = count_local(torsors);
    out.s_dual = count_local(dual_torsors);
    out.upper = selmer_upper(out.s, out.s_dual);

    const Curve curve(A, 0);
    std::set<Integer> classes, dual_classes;
    std::vector<Point> derived;
    for (const auto& t : torsors) {
        if (!t.has_global_point()) continue;
        classes.insert(t.d);
        if (auto p = torsor_to_curve(t.d, std::get<GlobalPoint>(t.status)); p && !is_torsion(curve, *p)) {
            derived.push_back(*p);
        }
    }
    // The rescaled dual model differs from y^2 = x^3 - 4 A x by (x, y) -> (4x, 8y).
    const bool rescaled = dual != -4 * A;
    for (const auto& t : dual_torsors) {
        if (!t.has_global_point()) continue;
        dual_classes.insert(t.d);
        auto q = torsor_to_curve(t.d, std::get<GlobalPoint>(t.status));
        if (!q || q->x() == 0) continue;
        Rational x = q->x(), y = q->y();
        if (rescaled) {
            x *= 4;
            y *= 8;
        }
        // Dual isogeny back onto y^2 = x^3 + A x.
        Rational x2 = x * x;
        Point image(y * y / (4 * x2), y * (Rational(-4 * A) - x2) / (8 * x2));
        if (!curve.contains(image)) throw std::logic_error("dual isogeny image is off the curve");
        if (!is_torsion(curve, image)) derived.push_back(image);
    }

    constexpr std::size_t kMaxSearchWitnesses = 8;
    std::size_t from_search = 0;
    for (const auto& p : point_search(curve, search_bound, workers)) {
        const Integer m = p.x().get_num();
        classes.insert(m == 0 ? squarefree_kernel(A) : squarefree_kernel(m));
        if (from_search < kMaxSearchWitnesses && p.y() > 0 && !is_torsion(curve, p)) {
            out.witnesses.push_back(p);
            ++from_search;
        }
    }
    for (auto& p : derived) {
        if (p.y() < 0) p = negate(p);
        if (std::find(out.witnesses.begin(), out.witnesses.end(), p) == out.witnesses.end()) {
            out.witnesses.push_back(std::move(p));
        }
    }

    out.g = subgroup_size(classes);
    out.g_dual = subgroup_size(dual_classes);
    const unsigned found = log2_exact(out.g) + log2_exact(out.g_dual);
    out.lower = found >= 2 ? found - 2 : 0;
    if (out.lower > out.upper) throw std::logic_error("rank lower bound exceeds the Selmer bound");

    if (A < 0) {
        try {
            out.root_number = omega(-A);
        } catch (const std::domain_error&) {
        }
    }
    return out;
}

}  // namespace twistrank
