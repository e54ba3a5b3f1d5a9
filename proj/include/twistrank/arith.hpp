#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace twistrank {

using Integer = mpz_class;

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;
};

/// value = sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
    Integer value;
    int sign = 1;
    std::vector<PrimePower> factors;

    /// sign * prod(prime^exponent), i.e. value.
    Integer product() const;
    /// Largest exponent over all factors; 0 for +-1.
    unsigned max_exponent() const;
};

/// Parses a base-10 integer with optional leading sign. Throws std::invalid_argument.
Integer parse_integer(std::string_view text);

/// Jacobi symbol (a/m) for odd m >= 1; (a/1) = 1.
int jacobi(const Integer& a, const Integer& m);

/// Deterministic for |n| < 3.3e24; 64 seeded random Miller-Rabin rounds above that.
bool is_prime(const Integer& n);

/// Trial division to 10^6, then Pollard rho with Brent cycle detection.
Factorization factorize(const Integer& n);

/// Largest e with p^e | n. p must be prime and n nonzero.
unsigned valuation(const Integer& n, const Integer& p);

/// p | x^2 + n y^2 for odd prime p not dividing n and coprime (x, y).
///
/// Only the divisibility is computed; the companion condition (-n/p) = 1 is
/// left to the caller so both sides of the equivalence stay independent.
bool lemma_divisor_criterion(const Integer& n, const Integer& p, const Integer& x,
                             const Integer& y);

bool is_squarefree(const Integer& n);
bool is_fourth_power_free(const Integer& n);

/// Signed squarefree part: n = kernel * square. n must be nonzero.
Integer squarefree_kernel(const Integer& n);

/// Odd primes 3 <= p <= limit, ascending.
std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit);

}  // namespace twistrank
