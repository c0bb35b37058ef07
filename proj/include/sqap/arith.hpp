#pragma once

#include "sqap/types.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sqap::arith {

// Non-negative gcd; gcd(0, 0) = 0.
Int gcd(const Int& a, const Int& b);

// Returns (g, s, t) with s*a + t*b = g = gcd(a, b).
struct ExtendedGcd {
    Int g, s, t;
};
ExtendedGcd extended_gcd(const Int& a, const Int& b);

// Canonical residue in [0, m), m >= 1.
Int mod(const Int& a, const Int& m);

// ā in [0, m) with a*ā ≡ 1 (mod m). Throws NotInvertible when gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

Int pow_mod(Int base, Int exp, const Int& m);

// Floor of the square root; DomainError for negative input.
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n);
bool is_perfect_square(std::int64_t n);

// Smallest x with x^k >= n, for n >= 0 and k >= 1.
Int iroot_ceil(const Int& n, unsigned k);
// Largest x with x^k <= n.
Int iroot_floor(const Int& n, unsigned k);

// q = s * t^2 with s squarefree; DomainError for q <= 0.
Int squarefree_kernel(const Int& q);

// Jacobi symbol (a | n) for odd n >= 1.
int jacobi(const Int& a, const Int& n);

/// Deterministic primality. Below 10^6 by trial division, below 2^64 by
/// strong-pseudoprime tests to the first twelve prime bases (verified
/// correct for every n < 3.3e24). Throws OutOfRange for n >= 2^64.
bool is_prime(const Int& n);
bool is_prime_u64(std::uint64_t n);

// Smallest n >= 2 with (n | p) = -1. DomainError unless p is an odd prime.
Int least_qnr(const Int& p);

struct PrimePower {
    Int prime;
    unsigned exponent;
};

/// Full factorization in ascending prime order: trial division to 10^6,
/// then Brent-Pollard rho with constants c = 1, 2, 3, ... Throws
/// FactorizationFailed when a cofactor >= 2^64 survives trial division.
std::vector<PrimePower> factorize(const Int& n);

struct SqrtModOptions {
    // Moduli up to this bound are solved by an exhaustive scan.
    Int scan_threshold = 1'000'000;
};

/// Smallest c in [0, m) with c^2 ≡ a (mod m), or nullopt if a is a
/// non-residue. Requires gcd(a, m) = 1 (NotCoprime otherwise).
std::optional<Int> sqrt_mod(const Int& a, const Int& m, const SqrtModOptions& opts = {});

// Every square root of a unit a modulo p^k (p prime), ascending.
std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned k);

// Tonelli-Shanks for odd prime p < 2^64; a must be a nonzero residue.
std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p);

// Smallest prime factor table for [0, limit].
std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit);

// Primes up to limit (inclusive) by the sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

} // namespace sqap::arith
