#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "twistrank/biquad.hpp"

using namespace twistrank;

namespace {

using u128 = unsigned __int128;

// Every unordered {u, v} per value of u^4 + v^4, from a plain ordered map.
std::vector<std::pair<u128, std::vector<std::pair<unsigned, unsigned>>>> slow_collisions(unsigned bound) {
    std::map<u128, std::vector<std::pair<unsigned, unsigned>>> sums;
    for (unsigned u = 1; u <= bound; ++u)
        for (unsigned v = u; v <= bound; ++v) {
            if (std::gcd(u, v) != 1) continue;
            u128 a = u128(u) * u * u * u, b = u128(v) * v * v * v;
            sums[a + b].emplace_back(u, v);
        }
    std::vector<std::pair<u128, std::vector<std::pair<unsigned, unsigned>>>> out;
    for (auto& [n, reps] : sums)
        if (reps.size() > 1) out.emplace_back(n, reps);
    return out;
}

Integer fourth(const Integer& x) { return x * x * x * x; }

}  // namespace

TEST_CASE("validate_pair") {
    auto q = validate_pair(134, 133, 158, 59);
    CHECK(q.n == 635318657);
    CHECK(q.u == 59);
    CHECK(q.v == 158);
    CHECK(q.r == 133);
    CHECK(q.s == 134);
    CHECK(validate_pair(-59, 158, 134, -133) == q);

    auto row2 = validate_pair(10381, 10203, 12231, 2903);
    CHECK(row2.n == fourth(Integer(10381)) + fourth(Integer(10203)));

    auto defect = [](long u, long v, long r, long s) {
        try {
            validate_pair(u, v, r, s);
        } catch (const PairValidationError& e) {
            return e.defect();
        }
        FAIL("expected a rejection");
        return PairDefect::NotASolution;
    };
    CHECK(defect(1, 1, 1, 1) == PairDefect::Degenerate);
    CHECK(defect(59, 158, 158, 59) == PairDefect::Degenerate);
    CHECK(defect(1, 2, 3, 4) == PairDefect::NotASolution);
    CHECK(defect(0, 1, 1, 0) == PairDefect::NotASolution);
    CHECK(defect(118, 316, 266, 268) == PairDefect::NotPrimitive);
    CHECK_THROWS_AS(validate_pair(1, 2, 3, 4), std::invalid_argument);
}

TEST_CASE("find_collisions small bounds") {
    CHECK(find_collisions(133).empty());
    auto at200 = find_collisions(200);
    REQUIRE(at200.size() == 1);
    CHECK(at200[0] == validate_pair(59, 158, 133, 134));
    auto at250 = find_collisions(250);
    REQUIRE(at250.size() == 2);
    CHECK(at250[1] == validate_pair(7, 239, 157, 227));
    CHECK(at250[1].n % 16 == 2);
    CHECK_THROWS(find_collisions(50001));
}

TEST_CASE("find_collisions agrees with a map-based scan") {
    for (unsigned bound : {300u, 700u}) {
        auto fast = find_collisions(bound);
        auto slow = slow_collisions(bound);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < slow.size(); ++i) {
            REQUIRE(slow[i].second.size() == 2);
            auto [a, b] = slow[i].second[0];
            auto [c, d] = slow[i].second[1];
            CHECK(fast[i] == validate_pair(a, b, c, d));
        }
        CHECK(find_collisions(bound, 8) == fast);
    }
}

TEST_CASE("segmented search matches in-memory search") {
    auto whole = find_collisions(5000, 4);
    auto segmented = find_collisions(5200, 4);
    std::vector<QuarticPair> restricted;
    for (const auto& q : segmented)
        if (q.s <= 5000 && q.v <= 5000) restricted.push_back(q);
    CHECK(restricted == whole);
    CHECK(segmented.size() > whole.size());
    for (const auto& q : segmented) {
        CHECK(fourth(q.u) + fourth(q.v) == q.n);
        CHECK(fourth(q.r) + fourth(q.s) == q.n);
    }
}

TEST_CASE("every found n is 1 or 2 mod 16 with prime factors 1 mod 8") {
    for (const auto& q : find_collisions(1000)) {
        long r = mpz_fdiv_ui(q.n.get_mpz_t(), 16);
        CHECK((r == 1 || r == 2));
        CHECK(prime_factors_one_mod_eight(q));
    }
}

TEST_CASE("euler parametrization") {
    auto e = euler_parametrization(2, 1);
    CHECK(e.u == 158);
    CHECK(e.v == -59);
    CHECK(e.r == 134);
    CHECK(e.s == 133);
    auto f = euler_parametrization(1, 2);
    CHECK(f.u == 133);
    CHECK(f.v == 134);
    CHECK(f.r == -59);
    CHECK(f.s == 158);
    auto g = euler_parametrization(1, 1);
    CHECK(g.u == 4);
    CHECK(g.v == -2);
    CHECK(g.r == -2);
    CHECK(g.s == 4);
    CHECK_THROWS_AS(validate_pair(g.u, g.v, g.r, g.s), PairValidationError);
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b) {
            if (a == 0 && b == 0) continue;
            auto q = euler_parametrization(a, b);
            CHECK(fourth(q.u) + fourth(q.v) == fourth(q.r) + fourth(q.s));
        }
}

TEST_CASE("published seeds") {
    auto seeds = choudhry_seeds();
    REQUIRE(seeds.size() == 7);
    for (const auto& s : seeds) {
        INFO(s.row[0].get_str() << " " << s.failure);
        CHECK(s.valid());
        CHECK(s.pair->n == fourth(s.row[0]) + fourth(s.row[1]));
    }
}

TEST_CASE("known points") {
    auto q = validate_pair(59, 158, 133, 134);
    Curve c(-q.n, 0);
    auto pts = known_points(q);
    for (const auto& p : pts) {
        CHECK(c.contains(p));
        CHECK_FALSE(is_torsion(c, p));
    }
    CHECK(std::find(pts.begin(), pts.end(), Point(-17689, 2388148)) != pts.end());
    CHECK(std::find(pts.begin(), pts.end(), Point(-17956, 2370326)) != pts.end());
}
