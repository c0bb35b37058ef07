#pragma once

#include "sqap/types.hpp"

#include <optional>

namespace sqap {

/// Symmetric two-dimensional progression
///   { x1*q1 + x2*q2 : |x1| <= X1, |x2| <= X2 }.
/// Radii are exact rationals; only their floors enter any enumeration.
class TwoDAP {
public:
    TwoDAP(Int q1, Int q2, Rat x1_bound, Rat x2_bound);

    const Int& q1() const { return q1_; }
    const Int& q2() const { return q2_; }
    const Rat& x1_bound() const { return x1_bound_; }
    const Rat& x2_bound() const { return x2_bound_; }

    // Integer radii B1 = floor(X1), B2 = floor(X2).
    const Int& b1() const { return b1_; }
    const Int& b2() const { return b2_; }

    // max |x1 q1 + x2 q2| over the box.
    Int value_bound() const { return b1_ * q1_ + b2_ * q2_; }

    friend bool operator==(const TwoDAP&, const TwoDAP&) = default;

private:
    Int q1_, q2_;
    Rat x1_bound_, x2_bound_;
    Int b1_, b2_;
};

struct SquareWitness {
    Int x1, x2, n;

    friend bool operator==(const SquareWitness&, const SquareWitness&) = default;
};

// Throws DomainError unless x1 q1 + x2 q2 = n^2, n >= 1 and (x1, x2) lies in the box.
void check_witness(const TwoDAP& ap, const SquareWitness& w);

// Witness order: n ascending, then |x1| ascending, then positive x1 first.
bool witness_before(const SquareWitness& a, const SquareWitness& b);

struct Certificate {
    enum class Kind { Witness, SquareFree };

    Kind kind;
    std::optional<SquareWitness> witness;
    // Every n in [1, max_n_checked] was ruled out (SquareFree) or searched up to the witness.
    Int max_n_checked;
};

// (2 B1 + 1)(2 B2 + 1); equals the number of elements exactly when the progression is proper.
Int cardinality(const TwoDAP& ap);

// No collision d1 q1 = -d2 q2 with 0 < (|d1|, |d2|) inside the doubled box.
bool is_proper(const TwoDAP& ap);

/// Minimal witness among squares n^2 <= min(T, value_bound). For each n
/// the congruence x1 q1 ≡ n^2 (mod q2) is solved in the reduced modulus
/// q2/gcd(q1, q2) and the admissible x1 closest to zero is selected.
std::optional<SquareWitness> find_square_witness(const TwoDAP& ap, const Int& T);

Certificate certify_square_free(const TwoDAP& ap, const Int& T);

inline constexpr std::uint64_t kDefaultEnumerationGuard = 100'000'000;

// Exhaustive double loop over the box; same ordering as find_square_witness.
// TooLarge when the box holds more than `guard` points.
std::optional<SquareWitness> brute_force_witness(const TwoDAP& ap,
                                                 std::uint64_t guard = kDefaultEnumerationGuard);

} // namespace sqap
