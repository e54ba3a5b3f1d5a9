#pragma once

#include <string>

#include "twistrank/arith.hpp"

namespace twistrank {

enum class Verdict { RankZero, PositiveRank, Unknown };

const char* to_string(Verdict verdict);

/// Known unconditional rank statement for y^2 = x^3 - D^2 x.
struct TwistClass {
    Integer D;
    Verdict verdict = Verdict::Unknown;
    std::string rule;
};

// All three take a squarefree D >= 1 and throw std::invalid_argument otherwise.
// Patterns match the exact multiset of prime residues mod 8 (with or without
// the factor 2); anything else is Unknown.

/// D = p3, D = 2 p5, or D = p1 q3 r3 with (p1/q3) = -(p1/r3).
TwistClass congruent_rank_zero(const Integer& D);

/// Monsky's families: p5, p7, 2p7, 2p3, p3p7, p3p5, 2p3p5, 2p5p7, and
/// p1p5, p1p7, 2p1p7, 2p1p3 under (p1/p) = -1.
TwistClass monsky_positive(const Integer& D);

/// Rank-zero rules first, then positive-rank rules; Unknown when neither fires.
TwistClass classify_twist(const Integer& D);

}  // namespace twistrank
