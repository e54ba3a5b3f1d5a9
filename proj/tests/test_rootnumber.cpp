#include <doctest.h>

#include <stdexcept>
#include <variant>

#include "twistrank/arith.hpp"
#include "twistrank/rootnumber.hpp"

using namespace twistrank;

namespace {

// Direct evaluation of the root-number formula with trial division.
int slow_omega(long n) {
    static const int eps[16] = {0, -1, 1, -1, 0, 1, 1, 1, 0, 1, 1, -1, 0, -1, 1, 1};
    int out = -eps[n % 16];
    for (long l = 3; l * l <= n; l += 2) {
        bool prime = true;
        for (long q = 3; q * q <= l; q += 2)
            if (l % q == 0) prime = false;
        if (!prime) continue;
        int k = 0;
        for (long m = n; m % l == 0; m /= l) ++k;
        if (k == 2 && l % 4 == 3) out = -out;
    }
    return out;
}

}  // namespace

TEST_CASE("epsilon on every residue class") {
    for (long r = 0; r < 16; ++r) {
        for (long n : {r + 16, r + 160, r + 16000000}) {
            if (r % 4 == 0) {
                CHECK_THROWS_AS(epsilon(n), std::domain_error);
            } else {
                bool minus = r == 1 || r == 3 || r == 11 || r == 13;
                CHECK(epsilon(n) == (minus ? -1 : 1));
            }
        }
    }
    CHECK(epsilon(17) == -1);
    CHECK(epsilon(2) == 1);
    CHECK_THROWS_AS(epsilon(0), std::domain_error);
    CHECK_THROWS_AS(epsilon(-3), std::domain_error);
}

TEST_CASE("omega examples") {
    CHECK(omega(1) == 1);
    CHECK(omega(5) == -1);
    CHECK(omega(Integer("886117685355977")) == -1);
    CHECK(omega(Integer("1608116501388523697")) == -1);
    CHECK_THROWS_AS(omega(20), std::domain_error);
    CHECK_THROWS_AS(omega(0), std::domain_error);
    CHECK_THROWS_AS(omega(-5), std::domain_error);
    CHECK_THROWS_AS(omega(3 * 3 * 3 * 3 * 5), std::domain_error);
    CHECK_THROWS_AS(omega(27 * 5), std::domain_error);
}

TEST_CASE("omega agrees with trial-division evaluation") {
    for (long n = 1; n < 30000; ++n) {
        if (n % 4 == 0) continue;
        if (!is_fourth_power_free(n)) continue;
        bool cube = false;
        for (long l = 3; l * l * l <= n; l += 2)
            if (n % (l * l * l) == 0) cube = true;
        if (cube) {
            CHECK_THROWS_AS(omega(n), std::domain_error);
            continue;
        }
        INFO("n=" << n);
        REQUIRE(omega(n) == slow_omega(n));
    }
}

TEST_CASE("predict_parity examples") {
    Integer n(635318657);
    auto a = predict_parity(n, 1181);
    CHECK(a.predicted_parity == Parity::Odd);
    CHECK(a.theorem_case == "3.1(i)a");
    CHECK(a.omega == -1);
    CHECK(a.consistent);
    auto b = predict_parity(n, 19);
    CHECK(b.predicted_parity == Parity::Even);
    CHECK(b.theorem_case == "3.1(ii)b");
    auto c = predict_parity(n, 89);
    CHECK(c.predicted_parity == Parity::Even);
    CHECK(c.theorem_case == "3.1(ii)a");
    CHECK_THROWS_AS(predict_parity(n, 41), std::domain_error);
    CHECK_THROWS_AS(predict_parity(n, 2), std::domain_error);
    CHECK_THROWS_AS(predict_parity(n, 15), std::domain_error);
    CHECK_THROWS_AS(predict_parity(Integer(5), 3), std::domain_error);
    CHECK(std::string(to_string(Parity::Odd)) == "Odd");
}

TEST_CASE("prediction matches omega for both residue classes") {
    for (long n : {17L, 2L, 635318657L, 3262811042L, 97L * 113L, 2L * 17L}) {
        for (auto p : odd_primes_up_to(2000)) {
            if (n % static_cast<long>(p) == 0) continue;
            auto r = predict_parity(n, p);
            Integer np2 = Integer(n) * p * p;
            CHECK(r.omega == omega(np2));
            CHECK(r.consistent);
            CHECK((r.predicted_parity == Parity::Odd) == (r.omega == -1));
            bool odd = (n % 2 == 1) ? (p % 8 == 5 || p % 8 == 7) : (p % 4 == 1);
            CHECK((r.predicted_parity == Parity::Odd) == odd);
        }
    }
}

TEST_CASE("p^2 mod 16 takes only the values 1 and 9") {
    for (auto p : odd_primes_up_to(5000)) {
        auto r = (p * p) % 16;
        CHECK((r == 1 || r == 9));
        CHECK((r == 9) == (p % 8 == 3 || p % 8 == 5));
    }
}

TEST_CASE("parity_table") {
    auto rows = parity_table(Integer(635318657), 100);
    CHECK(rows.size() == 24);
    int skipped = 0;
    for (const auto& row : rows) {
        if (auto* s = std::get_if<SkippedRow>(&row)) {
            CHECK(s->p == 41);
            ++skipped;
            continue;
        }
        const auto& r = std::get<ParityReport>(row);
        CHECK(r.consistent);
        long m = r.p.get_si() % 8;
        if (m == 5 || m == 7) CHECK(r.predicted_parity == Parity::Odd);
    }
    CHECK(skipped == 1);
    CHECK(parity_table(Integer(635318657), 2).empty());
    for (const auto& row : parity_table(Integer(3262811042), 50)) {
        const auto& r = std::get<ParityReport>(row);
        CHECK((r.predicted_parity == Parity::Odd) == (r.p.get_si() % 4 == 1));
    }
    CHECK(parity_table(Integer(635318657), 3000, 1).size() == parity_table(Integer(635318657), 3000, 8).size());
}
