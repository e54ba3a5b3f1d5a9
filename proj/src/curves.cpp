#include "twistrank/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <numeric>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "exact_sqrt.hpp"

namespace twistrank {

Point::Point(Rational x, Rational y) : affine_(Affine{std::move(x), std::move(y)}) {
    affine_->x.canonicalize();
    affine_->y.canonicalize();
}

const Rational& Point::x() const {
    if (!affine_) throw std::logic_error("point at infinity has no x coordinate");
    return affine_->x;
}

const Rational& Point::y() const {
    if (!affine_) throw std::logic_error("point at infinity has no y coordinate");
    return affine_->y;
}

std::string Point::to_string() const {
    if (!affine_) return "O";
    return "(" + affine_->x.get_str() + ", " + affine_->y.get_str() + ")";
}

bool operator==(const Point& lhs, const Point& rhs) {
    if (lhs.is_infinity() || rhs.is_infinity()) return lhs.is_infinity() == rhs.is_infinity();
    return lhs.affine_->x == rhs.affine_->x && lhs.affine_->y == rhs.affine_->y;
}

Curve::Curve(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {
    if (discriminant() == 0) throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0");
}

Integer Curve::discriminant() const {
    return -16 * (4 * a_ * a_ * a_ + 27 * b_ * b_);
}

bool Curve::contains(const Point& p) const {
    if (p.is_infinity()) return true;
    const Rational& x = p.x();
    Rational rhs = x * x * x + Rational(a_) * x + Rational(b_);
    return p.y() * p.y() == rhs;
}

std::string Curve::to_string() const {
    std::string out = "y^2 = x^3";
    auto term = [&](const Integer& c, const char* suffix) {
        if (c == 0) return;
        out += c < 0 ? " - " : " + ";
        Integer mag = abs(c);
        if (mag != 1 || *suffix == '\0') out += mag.get_str();
        out += suffix;
    };
    term(a_, "x");
    term(b_, "");
    return out;
}

Curve twist(const Curve& c, const Integer& D) {
    if (D == 0 || !is_squarefree(D)) throw std::invalid_argument("twist: D must be squarefree and nonzero");
    return Curve(c.a() * D * D, c.b() * D * D * D);
}

Point negate(const Point& p) {
    if (p.is_infinity()) return p;
    return Point(p.x(), -p.y());
}

namespace {

void require_on_curve(const Curve& c, const Point& p) {
    if (!c.contains(p)) throw std::invalid_argument("point " + p.to_string() + " is not on " + c.to_string());
}

Point add_unchecked(const Curve& c, const Point& p, const Point& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    Rational lambda;
    if (p.x() == q.x()) {
        if (p.y() != q.y() || p.y() == 0) return Point::infinity();
        lambda = (3 * p.x() * p.x() + Rational(c.a())) / (2 * p.y());
    } else {
        lambda = (q.y() - p.y()) / (q.x() - p.x());
    }
    Rational x3 = lambda * lambda - p.x() - q.x();
    Rational y3 = lambda * (p.x() - x3) - p.y();
    return Point(x3, y3);
}

Point multiply_unchecked(const Curve& c, long k, const Point& p) {
    Point base = k < 0 ? negate(p) : p;
    unsigned long n = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
    Point acc = Point::infinity();
    while (n != 0) {
        if (n & 1) acc = add_unchecked(c, acc, base);
        n >>= 1;
        if (n != 0) base = add_unchecked(c, base, base);
    }
    return acc;
}

}  // namespace

Point add(const Curve& c, const Point& p, const Point& q) {
    require_on_curve(c, p);
    require_on_curve(c, q);
    return add_unchecked(c, p, q);
}

Point multiply(const Curve& c, long k, const Point& p) {
    require_on_curve(c, p);
    return multiply_unchecked(c, k, p);
}

bool is_torsion(const Curve& c, const Point& p) {
    require_on_curve(c, p);
    if (p.is_infinity()) return true;
    // Nagell-Lutz: torsion points on an integral model have integer coordinates.
    if (p.x().get_den() != 1 || p.y().get_den() != 1) return false;
    Point acc = p;
    for (int k = 1; k <= 12; ++k) {
        if (acc.is_infinity()) return true;
        acc = add_unchecked(c, acc, p);
    }
    return false;
}

namespace {

using detail::exact_sqrt;
using detail::i128;

struct Found {
    long m;
    long e;
    Point point;
};

void scan_range(const Curve& c, long m_lo, long m_hi, long e_max, bool fast, std::vector<Found>& out) {
    i128 a128 = 0, b128 = 0;
    if (fast) {
        a128 = c.a().get_si();
        b128 = c.b().get_si();
    }
    for (long m = m_lo; m <= m_hi; ++m) {
        for (long e = 1; e <= e_max; ++e) {
            if (std::gcd(std::labs(m), e) != 1) continue;
            std::optional<Integer> root;
            if (fast) {
                i128 e2 = static_cast<i128>(e) * e;
                i128 e4 = e2 * e2;
                i128 mm = m;
                i128 value = mm * mm * mm + a128 * mm * e4 + b128 * e4 * e2;
                root = exact_sqrt(value);
            } else {
                Integer mm = m, ee = e;
                Integer e2 = ee * ee;
                Integer value = mm * mm * mm + c.a() * mm * e2 * e2 + c.b() * e2 * e2 * e2;
                root = exact_sqrt(value);
            }
            if (!root) continue;
            Rational x(Integer(m), Integer(e) * e);
            Rational y(*root, Integer(e) * e * e);
            out.push_back({m, e, Point(x, y)});
            if (*root != 0) out.push_back({m, e, Point(x, -y)});
        }
    }
}

}  // namespace

std::vector<Point> point_search(const Curve& c, const Integer& numerator_bound, unsigned workers) {
    if (numerator_bound < 0) return {};
    if (!numerator_bound.fits_slong_p() || numerator_bound > Integer("1000000000000")) {
        throw std::invalid_argument("point_search: numerator bound too large");
    }
    const long bound = numerator_bound.get_si();
    Integer e_root;
    mpz_root(e_root.get_mpz_t(), numerator_bound.get_mpz_t(), 4);
    const long e_max = std::max(1L, e_root.get_si());

    // The 128-bit path needs |m^3| + |a| |m| e^4 + |b| e^6 well inside 2^126.
    Integer e4 = Integer(e_max) * e_max * e_max * e_max;
    Integer worst = numerator_bound * numerator_bound * numerator_bound + abs(c.a()) * numerator_bound * e4 +
                    abs(c.b()) * e4 * e_max * e_max;
    Integer limit = Integer(1) << 125;
    const bool fast = worst < limit && c.a().fits_slong_p() && c.b().fits_slong_p();

    workers = std::max(1u, workers);
    const long span = 2 * bound + 1;
    std::vector<std::vector<Found>> parts(workers);
    {
        std::vector<std::jthread> threads;
        for (unsigned w = 0; w < workers; ++w) {
            long lo = -bound + span * static_cast<long>(w) / static_cast<long>(workers);
            long hi = -bound + span * static_cast<long>(w + 1) / static_cast<long>(workers) - 1;
            threads.emplace_back([&, w, lo, hi] { scan_range(c, lo, hi, e_max, fast, parts[w]); });
        }
    }
    std::vector<Found> all;
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(all));
    std::sort(all.begin(), all.end(), [](const Found& l, const Found& r) {
        long al = std::labs(l.m), ar = std::labs(r.m);
        if (al != ar) return al < ar;
        if (l.e != r.e) return l.e < r.e;
        if (l.m != r.m) return l.m < r.m;
        return l.point.y() < r.point.y();
    });
    std::vector<Point> out;
    out.reserve(all.size());
    for (auto& f : all) out.push_back(std::move(f.point));
    return out;
}

}  // namespace twistrank
