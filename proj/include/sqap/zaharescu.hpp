#pragma once

#include "sqap/progression.hpp"
#include "sqap/types.hpp"

#include <cstdint>

namespace sqap::zaharescu {

/// Every intermediate of the small-square construction for coprime
/// (q1, q2) and a bound N:
///   b*q2 ≡ c^2 (mod q1), c*c_bar ≡ 1 (mod q1),
///   approx_d = n*c_bar + m*q1 with |approx_d| <= q1/N,
///   witness = ((n^2 - b*q2*approx_d^2)/q1, b*approx_d^2, n).
struct ZaharescuTrace {
    Int b, c, c_bar, n, m, approx_d;
    SquareWitness witness;
};

inline constexpr std::int64_t kSquareClassGuard = 100'000;

/// Smallest h >= 1 such that every unit x modulo k can be written
/// x ≡ y z^2 (mod k) with |y| <= h. Exhaustive; TooLarge above `guard`.
Int square_class_radius(const Int& k, std::int64_t guard = kSquareClassGuard);

struct DirichletPoint {
    Int n;
    Int m;
    Int approx_d; // n*numerator + m*modulus
};

/// n in [1, N] with dist(n*numerator/modulus, Z) <= 1/N: the largest
/// continued-fraction convergent denominator not exceeding N. m is the
/// nearest integer to -n*numerator/modulus, ties toward zero.
DirichletPoint dirichlet_by_convergents(const Int& numerator, const Int& modulus, const Int& N);

inline constexpr std::int64_t kDirichletScanGuard = 10'000;

// Scan of n in [1, N] minimizing the distance to Z (smallest n on ties). TooLarge for N > guard.
DirichletPoint dirichlet_by_scan(const Int& numerator, const Int& modulus, const Int& N,
                                 std::int64_t guard = kDirichletScanGuard);

/// Builds x1*q1 + x2*q2 = n^2 with 1 <= n <= N. NotCoprime unless
/// gcd(q1, q2) = 1. All trace invariants are verified before returning.
ZaharescuTrace construct_small_square(const Int& q1, const Int& q2, const Int& N);

// Throws DomainError naming the first violated trace invariant.
void check_trace(const Int& q1, const Int& q2, const Int& N, const ZaharescuTrace& trace);

inline constexpr std::uint64_t kRepresentationGuard = 100'000'000;

/// Exhaustive search over n <= N and |x1|, |x2| <= q2^2 for the
/// representation x1*q1 + x2*q2 = n^2 minimizing max(|x1|, |x2|); ties go to
/// smaller n, then the usual witness order. Requires coprime 1 <= q1 <= q2.
SquareWitness minimal_representation(const Int& q1, const Int& q2, const Int& N,
                                     std::uint64_t guard = kRepresentationGuard);

// Exact tests of the empirical bound ratios against `ceiling`:
//   |x2| N^2 / q1^(9/4) <= ceiling
//   |x1| / (N^2/q1 + q1^(5/4) q2 / N^2) <= ceiling
bool x2_ratio_within(const Int& q1, const Int& N, const SquareWitness& w, const Rat& ceiling);
bool x1_ratio_within(const Int& q1, const Int& q2, const Int& N, const SquareWitness& w, const Rat& ceiling);

// Display-only floating renderings of the same ratios.
double x2_ratio(const Int& q1, const Int& N, const SquareWitness& w);
double x1_ratio(const Int& q1, const Int& q2, const Int& N, const SquareWitness& w);

} // namespace sqap::zaharescu
