#include "twistrank/classify.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace twistrank {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::RankZero: return "RankZero";
        case Verdict::PositiveRank: return "PositiveRank";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

namespace {

struct Shape {
    bool has_two = false;
    // Odd primes, sorted by (residue mod 8, value).
    std::vector<std::pair<unsigned long, Integer>> odd;

    std::vector<unsigned long> residues() const {
        std::vector<unsigned long> out;
        for (const auto& [r, p] : odd) out.push_back(r);
        return out;
    }
    bool is(bool two, std::vector<unsigned long> wanted) const {
        std::sort(wanted.begin(), wanted.end());
        return has_two == two && residues() == wanted;
    }
    const Integer& prime(std::size_t i) const { return odd[i].second; }
};

Shape shape_of(const Integer& D) {
    if (D < 1) throw std::invalid_argument("D must be a positive squarefree integer");
    Factorization f = factorize(D);
    if (f.max_exponent() > 1) throw std::invalid_argument("D = " + D.get_str() + " is not squarefree");
    Shape shape;
    for (const auto& [p, e] : f.factors) {
        if (p == 2) {
            shape.has_two = true;
        } else {
            shape.odd.emplace_back(mpz_fdiv_ui(p.get_mpz_t(), 8), p);
        }
    }
    std::sort(shape.odd.begin(), shape.odd.end());
    return shape;
}

TwistClass make(const Integer& D, Verdict verdict, std::string rule) {
    return TwistClass{D, verdict, std::move(rule)};
}

}  // namespace

TwistClass congruent_rank_zero(const Integer& D) {
    const Shape s = shape_of(D);
    if (s.is(false, {3})) return make(D, Verdict::RankZero, "p≡3 (mod 8)");
    if (s.is(true, {5})) return make(D, Verdict::RankZero, "2p, p≡5 (mod 8)");
    if (s.is(false, {1, 3, 3})) {
        // The condition is symmetric in q and r, so either ordering decides it.
        const Integer& p = s.prime(0);
        if (jacobi(p, s.prime(1)) == -jacobi(p, s.prime(2))) {
            return make(D, Verdict::RankZero, "pqr, p≡1, q≡r≡3 (mod 8), (p/q)=-(p/r)");
        }
    }
    return make(D, Verdict::Unknown, "");
}

TwistClass monsky_positive(const Integer& D) {
    const Shape s = shape_of(D);
    struct Plain {
        bool two;
        std::vector<unsigned long> residues;
        const char* label;
    };
    static const Plain plain[] = {
        {false, {5}, "p5"},       {false, {7}, "p7"},       {true, {7}, "2p7"},       {true, {3}, "2p3"},
        {false, {3, 7}, "p3p7"},  {false, {3, 5}, "p3p5"},  {true, {3, 5}, "2p3p5"},  {true, {5, 7}, "2p5p7"},
    };
    for (const auto& pattern : plain) {
        if (s.is(pattern.two, pattern.residues)) return make(D, Verdict::PositiveRank, pattern.label);
    }

    // Two-prime shapes with a p1 factor need (p1/q) = -1; p1 sorts first.
    struct Conditional {
        bool two;
        unsigned long other;
        const char* label;
    };
    static const Conditional conditional[] = {
        {false, 5, "p1p5"}, {false, 7, "p1p7"}, {true, 7, "2p1p7"}, {true, 3, "2p1p3"},
    };
    for (const auto& pattern : conditional) {
        if (s.is(pattern.two, {1, pattern.other}) && jacobi(s.prime(0), s.prime(1)) == -1) {
            return make(D, Verdict::PositiveRank, pattern.label);
        }
    }
    return make(D, Verdict::Unknown, "");
}

TwistClass classify_twist(const Integer& D) {
    TwistClass zero = congruent_rank_zero(D);
    if (zero.verdict != Verdict::Unknown) return zero;
    return monsky_positive(D);
}

}  // namespace twistrank
