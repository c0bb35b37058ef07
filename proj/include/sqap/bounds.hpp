#pragma once

#include "sqap/types.hpp"
#include "sqap/zaharescu.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqap::bounds {

// Largest B such that { x q : |x| <= B } lies in [-T, T] and avoids nonzero squares:
// min(floor(T/q), squarefree_kernel(q) - 1).
Int one_d_bound(const Int& q, const Int& T);

// (T/q1, T/q2): hard caps on the radii of any progression inside [-T, T].
std::pair<Rat, Rat> radius_caps(const Int& q1, const Int& q2, const Int& T);

/// Position of (q1, q2) = (T^a, T^b) in the exponent simplex 0 <= a <= b <= 1.
struct ExponentPoint {
    Rat a, b;

    friend bool operator==(const ExponentPoint&, const ExponentPoint&) = default;
    // Lexicographic on (a, b).
    friend bool operator<(const ExponentPoint& l, const ExponentPoint& r) {
        return l.a < r.a || (l.a == r.a && l.b < r.b);
    }
};

enum class CaseLabel { IA, IB, IIA1, IIA2, IIB1, IIB2 };
std::string_view to_string(CaseLabel label);

struct CaseReport {
    CaseLabel label;    // branch attaining the overall exponent
    Rat exponent;       // max(case_one, case_two)
    CaseLabel case_one_label;
    Rat case_one;       // X1 small branch
    CaseLabel case_two_label;
    Rat case_two;       // X2 small branch
    std::vector<std::string> constituents;
};

/// Exponent e with |A| << T^e at exponent point p (all epsilons zero).
/// X1-small branch: 5/7 for b <= 4/7, else 1 - b/2.
/// X2-small branch: for b >= 2/3 the smaller of 1 + a/8 - b/2 and 2 - a - b;
/// for b < 2/3, 20/27 when a + 2b <= 52/27 and 1 - a + b/2 otherwise.
/// DomainError outside the simplex.
CaseReport case_exponent(const ExponentPoint& p);

enum class Branch { Overall, CaseOne, CaseTwo };

struct SupremumReport {
    Rat supremum;
    std::vector<ExponentPoint> attained_at; // sorted, deduplicated
};

// Intersections of the piecewise boundaries that lie inside the simplex (and below b_max, if given).
std::vector<ExponentPoint> boundary_vertices(const std::optional<Rat>& b_max = std::nullopt);

/// Max of the chosen branch over the grid {(i/r, j/r) : 0 <= i <= j <= r}
/// together with every boundary vertex, optionally restricted to b <= b_max.
SupremumReport exponent_supremum(int resolution, Branch branch = Branch::Overall,
                                 const std::optional<Rat>& b_max = std::nullopt);

/// Integer window [N_lo, N_hi] where
///   N^2 <= q1 q2^(-1/2-eps) T^(20/27+2eps),
///   N^2 >= q1^(5/4+eps) q2^(3/2+eps) T^(-20/27-eps),
///   N^2 >= q1^(5/4+eps) T^(7/27),
/// decided by exact integer powers. nullopt when empty.
/// DomainError unless 1 <= q1 <= q2 <= T and eps >= 0.
std::optional<std::pair<Int, Int>> n_window(const Int& q1, const Int& q2, const Int& T, const Rat& eps = 0);

// ceil(q1^(9/16) q2^(1/4)): smallest N with N^16 >= q1^9 q2^4.
Int balanced_N(const Int& q1, const Int& q2);

// ceil(q2^(3/4)).
Int two_sided_N(const Int& q2);

struct TwoSidedBoxVerdict {
    enum class Status { Vacuous, WitnessInBox, Flagged };

    Status status;
    Int N; // 0 when vacuous
    std::optional<zaharescu::ZaharescuTrace> trace;

    bool pass() const { return status != Status::Flagged; }
};

/// When both X1 and X2 exceed ceiling * q2^(1/2), builds a small square
/// with N = ceil(q2^(3/4)) and reports whether it lands in the box; otherwise
/// the hypothesis is vacuous. Requires coprime q1, q2.
TwoSidedBoxVerdict two_sided_box_check(const Int& q1, const Int& q2, const Rat& X1, const Rat& X2,
                                       const Rat& ceiling);

} // namespace sqap::bounds
