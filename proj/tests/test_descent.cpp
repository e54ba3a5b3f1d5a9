#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "twistrank/arith.hpp"
#include "twistrank/descent.hpp"

using namespace twistrank;

namespace {

using i128 = __int128;

long mod(i128 a, long m) {
    long r = static_cast<long>(a % m);
    return r < 0 ? r + m : r;
}

bool unit_square(long u, long q) {
    if (q == 2) return u % 8 == 1;
    for (long x = 1; x < q; ++x)
        if (x * x % q == u % q) return true;
    return false;
}

// Exhaustive residue search mod q^K on both charts. A residue certifies a
// q-adic square when its valuation t is even and t plus the lifting margin
// still fits below K.
bool slow_local(long d, long e, long q) {
    const long margin = q == 2 ? 3 : 1;
    const long K = static_cast<long>(valuation(Integer(16) * d * e, q)) + 3 + (q == 2 ? 2 : 0);
    long M = 1;
    for (long i = 0; i < K; ++i) M *= q;
    auto certified = [&](i128 g) {
        long r = mod(g, M);
        if (r == 0) return false;
        long t = 0;
        while (r % q == 0) {
            r /= q;
            ++t;
        }
        return t % 2 == 0 && t + margin <= K && unit_square(r, q);
    };
    for (long x = 0; x < M; ++x) {
        i128 x4 = i128(x) * x % M * x % M * x % M;
        if (certified(i128(d) * x4 + e)) return true;
    }
    for (long y = 0; y < M; y += q) {
        i128 y4 = i128(y) * y % M * y % M * y % M;
        if (certified(i128(e) * y4 + d)) return true;
    }
    return false;
}

long slow_selmer(long A) {
    std::vector<long> primes;
    for (const auto& pp : factorize(A).factors) primes.push_back(pp.prime.get_si());
    long count = 0;
    for (long sign : {1L, -1L})
        for (unsigned mask = 0; mask < (1u << primes.size()); ++mask) {
            long d = sign;
            for (std::size_t i = 0; i < primes.size(); ++i)
                if (mask >> i & 1) d *= primes[i];
            long e = A / d;
            if (d < 0 && e < 0) continue;
            std::set<long> bad{2};
            for (auto p : primes) bad.insert(p);
            bool ok = true;
            for (long q : bad)
                if (!slow_local(d, e, q)) ok = false;
            if (ok) ++count;
        }
    return count;
}

}  // namespace

TEST_CASE("local solvability examples") {
    CHECK(locally_solvable(1, -25).solvable);
    auto real = locally_solvable(-1, -25);
    CHECK_FALSE(real.solvable);
    REQUIRE(real.obstruction);
    CHECK(real.obstruction->real);
    CHECK(real.obstruction->to_string() == "real");
}

TEST_CASE("Selmer counts agree with exhaustive residue search") {
    for (long A = -300; A <= 300; ++A) {
        if (A == 0 || !is_fourth_power_free(A)) continue;
        bool small = true;
        for (const auto& pp : factorize(A).factors)
            if (pp.prime > 13) small = false;
        if (!small) continue;
        auto b = selmer_bound(A);
        INFO("A=" << A);
        CHECK(static_cast<long>(b.s) == slow_selmer(A));
        CHECK(static_cast<long>(b.s_dual) == slow_selmer(isogenous_coefficient(A).get_si()));
    }
}

TEST_CASE("global points are everywhere local and Selmer classes form a group") {
    for (long A : {-25L, -34L, -289L, -2009L, -6L, 12L, -50L, -41L * 41, -17L * 41 * 9, 3L * 5 * 7}) {
        auto torsors = enumerate_torsors(A, 50);
        std::set<Integer> local;
        for (const auto& t : torsors) {
            CHECK(t.d * t.e == A);
            if (t.has_global_point()) {
                const auto& g = std::get<GlobalPoint>(t.status);
                Integer u4 = g.u * g.u * g.u * g.u, v4 = g.v * g.v * g.v * g.v;
                CHECK(t.d * u4 + t.e * v4 == g.w * g.w);
                CHECK(locally_solvable(t.d, t.e).solvable);
            }
            if (t.locally_solvable()) local.insert(t.d);
        }
        CHECK(local.count(1) == 1);
        for (const auto& a : local)
            for (const auto& b : local) CHECK(local.count(squarefree_kernel(a * b)) == 1);
    }
}

TEST_CASE("torsor enumeration") {
    auto ts = enumerate_torsors(-25, 10);
    REQUIRE(ts.size() == 4);
    CHECK(ts[0].d == -1);
    CHECK(ts[1].d == 1);
    CHECK(ts[1].has_global_point());
    CHECK(ts[3].d == 5);
    CHECK_THROWS(enumerate_torsors(0));
    CHECK_THROWS(enumerate_torsors(-32));
    CHECK(enumerate_torsors(-34L * 9, 30, 1).size() == enumerate_torsors(-34L * 9, 30, 4).size());
}

TEST_CASE("isogenous coefficient") {
    CHECK(isogenous_coefficient(-25) == 100);
    CHECK(isogenous_coefficient(-4) == 1);
    CHECK(isogenous_coefficient(12) == -3);
    CHECK(isogenous_coefficient(-1) == 4);
}

TEST_CASE("find_global_point") {
    auto g = find_global_point(2, Integer(8836) / 2, 80);
    REQUIRE(g);
    CHECK(2 * g->u * g->u * g->u * g->u + 4418 * g->v * g->v * g->v * g->v == g->w * g->w);
    CHECK_FALSE(find_global_point(-1, -1, 20));
    CHECK_THROWS(find_global_point(1, 1, Integer(1000001)));
}

TEST_CASE("rank intervals of congruent curves") {
    auto r5 = rank_interval(-25, 1000);
    CHECK(r5.lower == 1);
    CHECK(r5.upper == 1);
    CHECK(r5.s == 4);
    CHECK(r5.s_dual == 2);
    CHECK(r5.root_number == -1);
    CHECK_FALSE(r5.sha_suspect());
    CHECK(std::find(r5.witnesses.begin(), r5.witnesses.end(), Point(-4, 6)) != r5.witnesses.end());
    for (long p : {3L, 11L, 19L}) {
        auto r = rank_interval(-p * p, 10000);
        CHECK(r.lower == 0);
        CHECK(r.upper == 0);
    }
    auto r17 = rank_interval(-289, 10000);
    CHECK(r17.upper == 2);
    CHECK(r17.lower == 0);
    CHECK(r17.sha_suspect());
    CHECK(r17.diagnostics().find("exceeds") != std::string::npos);
    auto r41 = rank_interval(-1681, 10000);
    CHECK(r41.lower == 2);
    CHECK(r41.upper == 2);
}

TEST_CASE("bounds are ordered and witnesses are genuine") {
    for (long A = -120; A <= 120; ++A) {
        if (A == 0 || !is_fourth_power_free(A)) continue;
        auto r = rank_interval(A, 400);
        Curve c(A, 0);
        INFO("A=" << A);
        CHECK(r.lower <= r.upper);
        CHECK((1ul << (r.upper + 2)) == r.s * r.s_dual);
        for (const auto& p : r.witnesses) {
            CHECK(c.contains(p));
            CHECK_FALSE(is_torsion(c, p));
        }
        if (r.root_number && !r.sha_suspect()) CHECK((r.upper % 2 == 1) == (*r.root_number == -1));
    }
}

TEST_CASE("worker count does not change the result") {
    for (long A : {-25L * 49, -635318657L}) {
        auto a = rank_interval(A, 2000, 1);
        auto b = rank_interval(A, 2000, 8);
        CHECK(a.lower == b.lower);
        CHECK(a.upper == b.upper);
        CHECK(a.witnesses == b.witnesses);
    }
}
