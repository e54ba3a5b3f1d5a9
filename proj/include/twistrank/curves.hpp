#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistrank/arith.hpp"

namespace twistrank {

using Rational = mpq_class;

/// Affine rational point or the point at infinity. Coordinates are kept canonical.
class Point {
public:
    Point() = default;
    Point(Rational x, Rational y);

    static Point infinity() { return Point(); }

    bool is_infinity() const { return !affine_; }
    const Rational& x() const;
    const Rational& y() const;

    std::string to_string() const;

    friend bool operator==(const Point& lhs, const Point& rhs);

private:
    struct Affine {
        Rational x;
        Rational y;
    };
    std::optional<Affine> affine_;
};

/// y^2 = x^3 + a x + b with integer coefficients and nonzero discriminant.
class Curve {
public:
    Curve(Integer a, Integer b);

    const Integer& a() const { return a_; }
    const Integer& b() const { return b_; }

    /// -16 (4 a^3 + 27 b^2)
    Integer discriminant() const;
    bool contains(const Point& p) const;
    std::string to_string() const;

    friend bool operator==(const Curve& lhs, const Curve& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
    }

private:
    Integer a_;
    Integer b_;
};

/// (a D^2, b D^3). D must be squarefree and nonzero.
Curve twist(const Curve& c, const Integer& D);

Point negate(const Point& p);
Point add(const Curve& c, const Point& p, const Point& q);
Point multiply(const Curve& c, long k, const Point& p);

/// kP = O for some 1 <= k <= 12.
bool is_torsion(const Curve& c, const Point& p);

/// Every affine point with x = m/e^2, gcd(m, e) = 1, |m| <= numerator_bound and
/// 1 <= e <= numerator_bound^(1/4). Both signs of y are reported. Sorted by
/// (|m|, e, m, y) and identical for every worker count.
std::vector<Point> point_search(const Curve& c, const Integer& numerator_bound, unsigned workers = 1);

}  // namespace twistrank
