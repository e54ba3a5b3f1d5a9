#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistrank/arith.hpp"
#include "twistrank/curves.hpp"

namespace twistrank {

/// n = u^4 + v^4 = r^4 + s^4 with gcd(u, v) = gcd(r, s) = 1 and {u, v} != {r, s}.
/// Normalized so that u < v, r < s and u < r (u <= v only for n = 2).
struct QuarticPair {
    Integer u, v, r, s;
    Integer n;

    friend bool operator==(const QuarticPair&, const QuarticPair&) = default;
};

enum class PairDefect { NotASolution, NotPrimitive, Degenerate };

const char* to_string(PairDefect defect);

class PairValidationError : public std::invalid_argument {
public:
    PairValidationError(PairDefect defect, const std::string& what)
        : std::invalid_argument(what), defect_(defect) {}
    PairDefect defect() const { return defect_; }

private:
    PairDefect defect_;
};

/// Takes absolute values, then checks the quartic identity, distinctness of the
/// two representations and coprimality, in that order.
QuarticPair validate_pair(const Integer& u, const Integer& v, const Integer& r, const Integer& s);

/// All primitive pairs with every coordinate <= bound, ascending by n.
///
/// Sums u^4 + v^4 over coprime u <= v are bucketed by value; equal sums are the
/// pairs. Above 5000 the value axis is cut into segments so only one segment's
/// sums are resident at a time. Output does not depend on `workers`.
std::vector<QuarticPair> find_collisions(std::uint64_t bound, unsigned workers = 1);

struct Quadruple {
    Integer u, v, r, s;
};

/// Euler's two-parameter family, with r carrying -3a^2b^5 so that r != u.
Quadruple euler_parametrization(const Integer& a, const Integer& b);

struct SeedVerdict {
    std::array<Integer, 4> row;
    std::optional<QuarticPair> pair;
    std::string failure;

    bool valid() const { return pair.has_value(); }
};

/// The seven published solutions derived from (133, 134, 158, 59), each run
/// through validate_pair.
std::vector<SeedVerdict> choudhry_seeds();

/// (-u^2, u v^2), (-v^2, u^2 v), (-r^2, r s^2), (-s^2, r^2 s) on y^2 = x^3 - n x.
/// Throws std::logic_error if any point is off the curve or torsion.
std::array<Point, 4> known_points(const QuarticPair& pair);

/// Every odd prime factor of n is 1 mod 8, with (-2/l) = (2/l) = 1 for each.
bool prime_factors_one_mod_eight(const QuarticPair& pair);

}  // namespace twistrank
