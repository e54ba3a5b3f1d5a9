#include "twistrank/biquad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace twistrank {

const char* to_string(PairDefect defect) {
    switch (defect) {
        case PairDefect::NotASolution: return "not-a-solution";
        case PairDefect::NotPrimitive: return "not-primitive";
        case PairDefect::Degenerate: return "degenerate";
    }
    return "unknown";
}

namespace {

Integer fourth(const Integer& x) {
    Integer sq = x * x;
    return sq * sq;
}

}  // namespace

QuarticPair validate_pair(const Integer& u_in, const Integer& v_in, const Integer& r_in, const Integer& s_in) {
    Integer u = abs(u_in), v = abs(v_in), r = abs(r_in), s = abs(s_in);
    if (u == 0 || v == 0 || r == 0 || s == 0) {
        throw PairValidationError(PairDefect::NotASolution, "coordinates must be nonzero");
    }
    Integer n = fourth(u) + fourth(v);
    if (n != fourth(r) + fourth(s)) {
        throw PairValidationError(PairDefect::NotASolution, "u^4 + v^4 != r^4 + s^4");
    }
    if (u > v) std::swap(u, v);
    if (r > s) std::swap(r, s);
    if (u == r) {
        // Equal sums and equal smaller terms force equal larger terms.
        throw PairValidationError(PairDefect::Degenerate, "{u, v} and {r, s} are the same representation");
    }
    if (gcd(u, v) != 1 || gcd(r, s) != 1) {
        throw PairValidationError(PairDefect::NotPrimitive, "gcd(u, v) or gcd(r, s) exceeds 1");
    }
    if (r < u) {
        std::swap(u, r);
        std::swap(v, s);
    }
    return QuarticPair{u, v, r, s, n};
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kMaxBound = 50'000;
constexpr u64 kSegmentEntries = 4'000'000;

u64 pow4(u64 x) {
    return x * x * x * x;
}

// Largest r with r^4 <= x.
u64 floor_root4(u64 x) {
    auto r = static_cast<u64>(std::pow(static_cast<long double>(x), 0.25L));
    while (r > 0 && static_cast<u128>(r) * r * r * r > x) --r;
    while (static_cast<u128>(r + 1) * (r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
}

// Smallest r with r^4 >= x.
u64 ceil_root4(u64 x) {
    u64 r = floor_root4(x);
    return pow4(r) == x ? r : r + 1;
}

struct Sum {
    u64 value;
    std::uint32_t u;
    std::uint32_t v;
};

// Coprime u <= v <= bound with lo <= u^4 + v^4 < hi, for u = first, first + stride, ...
void collect_segment(u64 bound, u64 lo, u64 hi, u64 first, u64 stride, std::vector<Sum>& out) {
    for (u64 u = first; u <= bound; u += stride) {
        const u64 u4 = pow4(u);
        if (2 * u4 >= hi) break;
        u64 v_min = u;
        if (lo > u4) v_min = std::max(v_min, ceil_root4(lo - u4));
        u64 v_max = std::min(bound, floor_root4(hi - 1 - u4));
        for (u64 v = v_min; v <= v_max; ++v) {
            if (std::gcd(u, v) != 1) continue;
            out.push_back({u4 + pow4(v), static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
        }
    }
}

}  // namespace

std::vector<QuarticPair> find_collisions(std::uint64_t bound, unsigned workers) {
    if (bound < 1) return {};
    if (bound > kMaxBound) throw std::invalid_argument("find_collisions: bound exceeds 50000");
    workers = std::max(1u, workers);

    const u64 top = 2 * pow4(bound) + 1;
    u64 segments = 1;
    if (bound > 5000) segments = (bound * bound / 2 + kSegmentEntries - 1) / kSegmentEntries;

    std::vector<QuarticPair> out;
    for (u64 seg = 0; seg < segments; ++seg) {
        // Sums up to X number about sqrt(X), so quadratic cut points balance segments.
        auto cut = [&](u64 i) -> u64 {
            if (i >= segments) return top;
            long double f = static_cast<long double>(i) / static_cast<long double>(segments);
            return static_cast<u64>(static_cast<long double>(top) * f * f);
        };
        const u64 lo = cut(seg), hi = cut(seg + 1);
        if (lo >= hi) continue;

        std::vector<std::vector<Sum>> parts(workers);
        {
            std::vector<std::jthread> threads;
            for (unsigned w = 0; w < workers; ++w) {
                threads.emplace_back([&, w] { collect_segment(bound, lo, hi, 1 + w, workers, parts[w]); });
            }
        }
        std::vector<Sum> sums;
        for (auto& part : parts) sums.insert(sums.end(), part.begin(), part.end());
        parts.clear();
        std::sort(sums.begin(), sums.end(), [](const Sum& l, const Sum& r) {
            return l.value != r.value ? l.value < r.value : l.u < r.u;
        });

        for (std::size_t i = 0; i < sums.size();) {
            std::size_t j = i + 1;
            while (j < sums.size() && sums[j].value == sums[i].value) ++j;
            for (std::size_t a = i; a < j; ++a) {
                for (std::size_t b = a + 1; b < j; ++b) {
                    out.push_back(validate_pair(Integer(static_cast<unsigned long>(sums[a].u)),
                                                Integer(static_cast<unsigned long>(sums[a].v)),
                                                Integer(static_cast<unsigned long>(sums[b].u)),
                                                Integer(static_cast<unsigned long>(sums[b].v))));
                }
            }
            i = j;
        }
    }
    return out;
}

Quadruple euler_parametrization(const Integer& a, const Integer& b) {
    Integer a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a, a6 = a5 * a, a7 = a6 * a;
    Integer b2 = b * b, b3 = b2 * b, b4 = b3 * b, b5 = b4 * b, b6 = b5 * b, b7 = b6 * b;
    Quadruple q;
    q.u = a7 + a5 * b2 - 2 * a3 * b4 + 3 * a2 * b5 + a * b6;
    q.v = a6 * b - 3 * a5 * b2 - 2 * a4 * b3 + a2 * b5 + b7;
    q.r = a7 + a5 * b2 - 2 * a3 * b4 - 3 * a2 * b5 + a * b6;
    q.s = a6 * b + 3 * a5 * b2 - 2 * a4 * b3 + a2 * b5 + b7;
    return q;
}

std::vector<SeedVerdict> choudhry_seeds() {
    static const char* const rows[7][4] = {
        {"1054067", "545991", "522059", "1057167"},
        {"10381", "10203", "12231", "2903"},
        {"1453319", "829418", "1486969", "461882"},
        {"1137493", "654854", "60779", "1167518"},
        {"114613", "111637", "134413", "34813"},
        {"6565526", "3687711", "6710751", "1967986"},
        {"12178821457", "7038985479", "783453421", "12505169907"},
    };
    std::vector<SeedVerdict> out;
    for (const auto& row : rows) {
        SeedVerdict verdict;
        for (int i = 0; i < 4; ++i) verdict.row[i] = Integer(row[i]);
        try {
            verdict.pair = validate_pair(verdict.row[0], verdict.row[1], verdict.row[2], verdict.row[3]);
        } catch (const PairValidationError& err) {
            verdict.failure = std::string(to_string(err.defect())) + ": " + err.what();
        }
        out.push_back(std::move(verdict));
    }
    return out;
}

std::array<Point, 4> known_points(const QuarticPair& pair) {
    const Curve curve(-pair.n, 0);
    const auto& [u, v, r, s, n] = pair;
    std::array<Point, 4> points = {
        Point(Rational(-u * u), Rational(u * v * v)),
        Point(Rational(-v * v), Rational(u * u * v)),
        Point(Rational(-r * r), Rational(r * s * s)),
        Point(Rational(-s * s), Rational(r * r * s)),
    };
    for (const auto& p : points) {
        if (!curve.contains(p)) throw std::logic_error("known point " + p.to_string() + " is off the curve");
        if (is_torsion(curve, p)) throw std::logic_error("known point " + p.to_string() + " is torsion");
    }
    return points;
}

bool prime_factors_one_mod_eight(const QuarticPair& pair) {
    for (const auto& [l, exponent] : factorize(pair.n).factors) {
        if (l == 2) continue;
        if (mpz_fdiv_ui(l.get_mpz_t(), 8) != 1) return false;
        if (jacobi(Integer(-2), l) != 1 || jacobi(Integer(2), l) != 1) {
            throw std::logic_error("l = 1 mod 8 but (+-2/l) != 1 for l = " + l.get_str());
        }
    }
    return true;
}

}  // namespace twistrank
