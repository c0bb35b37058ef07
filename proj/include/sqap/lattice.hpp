#pragma once

#include "sqap/progression.hpp"
#include "sqap/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sqap::lattice {

using Vec2 = std::array<Int, 2>;

/// Rank-two sublattice of Z^2 given by basis rows, in Hermite normal form
/// when produced by congruence_lattice: rows (a, b), (0, c), 0 <= b < c.
struct Lattice2 {
    std::array<Vec2, 2> basis;
    Int det;

    bool contains(const Vec2& x) const;
};

// { x : x1*qt1 + x2*qt2 ≡ 0 (mod d) }. DomainError unless d >= 1 and gcd(qt1, qt2, d) = 1.
Lattice2 congruence_lattice(const Int& d, const Int& qt1, const Int& qt2);

// Squared gauge max(x1^2 U, x2^2 / U) of the box {|x1| <= U^{-1/2}, |x2| <= U^{1/2}}.
Rat gauge_squared(const Vec2& x, const Rat& U);

struct BoxMinima {
    Rat lambda1_sq, lambda2_sq;
    Vec2 u, v;
};

/// Exact successive minima of the gauge over L \ {0}. Attainers are sign
/// normalised (first non-zero coordinate positive) and ties are broken by
/// (|x1|, |x2|) ascending, then positive x2 first.
BoxMinima box_minima(const Lattice2& L, const Rat& U);

// True when a comes before b in the attainer order used by box_minima.
bool attainer_before(const Vec2& a, const Vec2& b);

/// One lattice substitution x = a1 u + a2 v for a progression whose step
/// sizes share the factor d >= 2. Fields refer to the axis order with
/// X1 <= X2; `swapped` records whether the input axes were exchanged.
struct ReductionStep {
    Int q1, q2;
    Rat x1_bound, x2_bound;
    bool swapped = false;

    Int d, qt1, qt2;
    Rat U;
    Rat lambda1_sq, lambda2_sq;
    Vec2 u, v;
    Int p1, p2;
    // Xt_i^2 = X1 X2 / (4 lambda_i^2); only the floors are consumed.
    Rat xt1_sq, xt2_sq;
    Int xt1_floor, xt2_floor;
};

ReductionStep reduce_step(const Int& q1, const Int& q2, const Rat& x1_bound, const Rat& x2_bound);

// Derived progression (|p1|, |p2|, floor Xt1, floor Xt2). DomainError if p1 or p2 is zero.
TwoDAP derived_progression(const ReductionStep& step);

// Image in the input coordinates of a derived point (alpha1, alpha2).
Vec2 embed(const ReductionStep& step, const Int& alpha1, const Int& alpha2);

struct ReductionVerdict {
    enum class Status { Pass, HypothesisFails, Fail };

    Status status;
    std::string detail;
};

std::string to_string(ReductionVerdict::Status s);

/// Rechecks the step's invariants, the embedding over the whole derived box,
/// and the transfer of square-freeness and properness. TooLarge beyond guard.
ReductionVerdict verify_reduction(const ReductionStep& step, const TwoDAP& ap, const Int& T,
                                  std::uint64_t guard = kDefaultEnumerationGuard);

struct ReduceOptions {
    // Gcds up to this size are divided out directly.
    Int small_gcd_limit = 16;
};

struct ChainStep {
    enum class Kind { DivideOut, Lattice };

    Kind kind;
    TwoDAP input;
    Int T;
    Int d;
    std::optional<ReductionStep> lattice_step;
    TwoDAP derived;
    Int derived_T;
    // Images of the derived unit vectors in input coordinates.
    Vec2 image1, image2;
};

struct ReductionChain {
    enum class Terminal { Coprime, OneDimensional, SmallGcdSmallBox, LargeGcd, Degenerate };

    std::vector<ChainStep> steps;
    Terminal terminal;
    TwoDAP final_instance;
    Int final_T;
    // LargeGcd only: whether the final instance is proper, and whether
    // X1 < qt2 or X2 < qt1 holds for it.
    std::optional<bool> proper, dichotomy;
};

std::string to_string(ReductionChain::Terminal t);
std::string to_string(ChainStep::Kind k);

ReductionChain reduce_recursive(const Int& q1, const Int& q2, const Rat& x1_bound,
                                const Rat& x2_bound, const Int& T,
                                const ReduceOptions& options = {});

} // namespace sqap::lattice
