#pragma once

#include <string>
#include <variant>
#include <vector>

#include "twistrank/arith.hpp"

namespace twistrank {

enum class Parity { Even, Odd };

const char* to_string(Parity parity);

/// Root number and predicted rank parity of y^2 = x^3 - n p^2 x.
struct ParityReport {
    Integer n;
    Integer p;
    int omega = 0;
    Parity predicted_parity = Parity::Even;
    /// One of 3.1(i)a, 3.1(i)b, 3.1(ii)a, 3.1(ii)b, 3.2(i)a, 3.2(i)b, 3.2(ii)a, 3.2(ii)b.
    std::string theorem_case;
    /// omega == -1 exactly when the predicted parity is odd.
    bool consistent = false;
};

/// A prime the table could not evaluate, with the reason.
struct SkippedRow {
    Integer p;
    std::string reason;
};

using TableRow = std::variant<ParityReport, SkippedRow>;

/// The sign factor of the root-number formula for y^2 = x^3 - n x.
/// Defined for n >= 1 with n not divisible by 4; throws std::domain_error otherwise.
int epsilon(const Integer& n);

/// Root number of y^2 = x^3 - n x:
///   sgn(-n) * epsilon(n) * prod over odd l with l^2 || n of (-1/l).
///
/// n must be positive, fourth-power-free and not divisible by 4. An odd prime
/// dividing n exactly three times is rejected as well, since the formula only
/// covers exponents 1 and 2. All violations throw std::domain_error.
int omega(const Integer& n);

/// Case-table prediction for the twist of y^2 = x^3 - n x by the odd prime p.
///
/// n must be 1 or 2 mod 16, p must not divide n, and every odd prime that
/// divides n exactly twice must be 1 mod 4. The root number of n p^2 is
/// recomputed from the formula and compared with the table.
ParityReport predict_parity(const Integer& n, const Integer& p);

/// One row per odd prime p <= p_max, ordered by p. Primes the prediction
/// rejects (for example divisors of n) come back as SkippedRow.
std::vector<TableRow> parity_table(const Integer& n, const Integer& p_max, unsigned workers = 1);

}  // namespace twistrank
