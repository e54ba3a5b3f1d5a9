#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "twistrank/arith.hpp"
#include "twistrank/curves.hpp"

namespace twistrank {

/// A completion of Q: the reals, or Q_p.
struct Place {
    bool real = false;
    Integer prime;

    static Place infinite() { return Place{true, 0}; }
    static Place finite(Integer p) { return Place{false, std::move(p)}; }
    std::string to_string() const { return real ? "real" : prime.get_str(); }
    friend bool operator==(const Place&, const Place&) = default;
};

struct GlobalPoint {
    Integer u, v, w;
};
struct EverywhereLocal {};
struct LocallyObstructed {
    Place place;
};

/// Homogeneous space w^2 = d u^4 + e v^4 attached to the class d of y^2 = x^3 + (d e) x.
struct Torsor {
    Integer d;
    Integer e;
    std::variant<GlobalPoint, EverywhereLocal, LocallyObstructed> status;

    bool has_global_point() const { return std::holds_alternative<GlobalPoint>(status); }
    bool locally_solvable() const { return !std::holds_alternative<LocallyObstructed>(status); }
};

struct LocalSolvability {
    bool solvable = true;
    std::optional<Place> obstruction;
};

/// Solvability of w^2 = d u^4 + e v^4 over R and every Q_p, p | 2de.
///
/// Each Q_p is decided by walking residue classes x + p^k Z_p of both affine
/// charts of the quartic: a class is accepted when the value at x is already a
/// p-adic square or Hensel's lemma yields a root in it, rejected when every
/// value in it shares the (non-square) class of the value at x, and split into
/// p subclasses otherwise. The first obstructing place is reported, real first,
/// then primes ascending.
LocalSolvability locally_solvable(const Integer& d, const Integer& e);

/// Search for a primitive (u, v) with 0 <= u, v <= height and d u^4 + e v^4 a square.
std::optional<GlobalPoint> find_global_point(const Integer& d, const Integer& e, const Integer& height);

/// One torsor per signed squarefree divisor d of A, ascending by |d| then sign.
/// `height` bounds the global point search; the d = 1 torsor always carries (1, 0, 1).
std::vector<Torsor> enumerate_torsors(const Integer& A, const Integer& height = 0, unsigned workers = 1);

/// y^2 = x^3 - 4 A x, rescaled by (x, y) -> (x/4, y/8) when 16 | 4A.
Integer isogenous_coefficient(const Integer& A);

struct SelmerBound {
    unsigned long s = 0;       // locally solvable classes for A
    unsigned long s_dual = 0;  // locally solvable classes for the isogenous coefficient
    unsigned upper = 0;        // log2(s * s_dual) - 2
};

SelmerBound selmer_bound(const Integer& A, unsigned workers = 1);

/// Rank bounds for y^2 = x^3 + A x.
struct RankInterval {
    Integer A;
    unsigned lower = 0;
    unsigned upper = 0;
    unsigned long s = 0;
    unsigned long s_dual = 0;
    /// Sizes of the subgroups generated by classes with an actual rational point.
    unsigned long g = 0;
    unsigned long g_dual = 0;
    /// Non-torsion points on y^2 = x^3 + A x.
    std::vector<Point> witnesses;
    /// Root number of y^2 = x^3 + A x when A < 0 and the closed formula applies.
    std::optional<int> root_number;

    /// Set when the bounds leave a gap or the parity of `upper` disagrees with
    /// the root number; either points at a nontrivial Sha[phi].
    bool sha_suspect() const;
    std::string diagnostics() const;
};

/// `search_bound` feeds both the curve point search (numerators) and the
/// torsor search (height = sqrt(search_bound)).
RankInterval rank_interval(const Integer& A, const Integer& search_bound, unsigned workers = 1);

}  // namespace twistrank
