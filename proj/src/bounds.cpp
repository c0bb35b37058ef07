#include "sqap/bounds.hpp"

#include "sqap/arith.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace sqap::bounds {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;
using boost::multiprecision::pow;

struct Factor {
    Int base;
    Rat exponent;
};

/// Product of rational powers of positive integers, compared against N^2
/// after raising both sides to the common denominator D of the exponents:
///   N^(2D) * prod_{e<0} base^(-eD)  vs  prod_{e>0} base^(eD).
class Monomial {
public:
    explicit Monomial(std::vector<Factor> factors) {
        Int lcm = 1;
        for (const auto& f : factors) {
            const Int& den = denominator(f.exponent);
            lcm = lcm / arith::gcd(lcm, den) * den;
        }
        if (lcm > 1'000'000)
            fail(ErrorCode::TooLarge, "exponent denominators too large for exact comparison");
        power_ = static_cast<unsigned>(lcm);
        for (const auto& f : factors) {
            if (f.base < 1)
                fail(ErrorCode::DomainError, "monomial bases must be positive");
            Rat scaled = f.exponent * power_;
            auto e = static_cast<unsigned>(boost::multiprecision::abs(numerator(scaled)));
            if (f.exponent > 0)
                right_ *= pow(f.base, e);
            else if (f.exponent < 0)
                left_ *= pow(f.base, e);
            log2_ += f.exponent.convert_to<double>() * std::log2(f.base.convert_to<double>());
        }
    }

    // Sign of N^2 - value: -1, 0 or +1.
    int compare_square(const Int& N) const {
        Int lhs = pow(N, 2 * power_) * left_;
        return lhs < right_ ? -1 : (lhs > right_ ? 1 : 0);
    }

    // Starting point for searches only; never used in a verdict.
    Int sqrt_estimate() const {
        double half = log2_ / 2;
        if (half < 1)
            return 1;
        if (half > 1000)
            return Int(1) << static_cast<unsigned>(half);
        return Int(static_cast<long double>(std::exp2(half)));
    }

private:
    unsigned power_ = 1;
    Int left_ = 1;
    Int right_ = 1;
    double log2_ = 0;
};

// Smallest N >= 1 with pred(N), for pred monotone false -> true.
Int smallest_satisfying(const std::function<bool(const Int&)>& pred, Int guess) {
    if (pred(1))
        return 1;
    Int lo = 1;
    Int hi = std::max(guess, Int(2));
    if (!pred(hi)) {
        do {
            lo = hi;
            hi *= 2;
        } while (!pred(hi));
    } else if (Int half = hi / 2; half > lo && !pred(half)) {
        lo = half;
    }
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

bool in_simplex(const ExponentPoint& p) { return 0 <= p.a && p.a <= p.b && p.b <= 1; }

struct Line {
    // alpha * a + beta * b = gamma
    Rat alpha, beta, gamma;
};

} // namespace

std::string_view to_string(CaseLabel label) {
    switch (label) {
    case CaseLabel::IA: return "IA";
    case CaseLabel::IB: return "IB";
    case CaseLabel::IIA1: return "IIA1";
    case CaseLabel::IIA2: return "IIA2";
    case CaseLabel::IIB1: return "IIB1";
    case CaseLabel::IIB2: return "IIB2";
    }
    return "?";
}

Int one_d_bound(const Int& q, const Int& T) {
    if (q < 1 || T < 0)
        fail(ErrorCode::DomainError, "one_d_bound: need q >= 1 and T >= 0");
    return std::min(Int(T / q), Int(arith::squarefree_kernel(q) - 1));
}

std::pair<Rat, Rat> radius_caps(const Int& q1, const Int& q2, const Int& T) {
    if (q1 < 1 || q2 < 1)
        fail(ErrorCode::DomainError, "radius_caps: steps must be >= 1");
    return {Rat(T, q1), Rat(T, q2)};
}

CaseReport case_exponent(const ExponentPoint& p) {
    if (!in_simplex(p))
        fail(ErrorCode::DomainError, "case_exponent: need 0 <= a <= b <= 1, got (" + to_decimal(p.a) + ", " +
                                         to_decimal(p.b) + ")");
    const Rat& a = p.a;
    const Rat& b = p.b;
    CaseReport r;

    // X1 is the short side.
    if (b <= Rat(4, 7)) {
        r.case_one_label = CaseLabel::IA;
        r.case_one = Rat(5, 7);
    } else {
        r.case_one_label = CaseLabel::IB;
        r.case_one = 1 - b / 2;
    }

    // X2 is the short side.
    if (b >= Rat(2, 3)) {
        Rat balanced = 1 + a / 8 - b / 2;
        Rat trivial = 2 - a - b;
        if (balanced <= trivial) {
            r.case_two_label = CaseLabel::IIA1;
            r.case_two = balanced;
        } else {
            r.case_two_label = CaseLabel::IIA2;
            r.case_two = trivial;
        }
    } else if (a + 2 * b <= Rat(52, 27)) {
        r.case_two_label = CaseLabel::IIB1;
        r.case_two = Rat(20, 27);
    } else {
        r.case_two_label = CaseLabel::IIB2;
        r.case_two = 1 - a + b / 2;
    }

    if (r.case_two >= r.case_one) {
        r.label = r.case_two_label;
        r.exponent = r.case_two;
    } else {
        r.label = r.case_one_label;
        r.exponent = r.case_one;
    }
    switch (r.label) {
    case CaseLabel::IA: r.constituents = {"two_sided_box", "reversed_small_square"}; break;
    case CaseLabel::IB: r.constituents = {"two_sided_box", "radius_caps"}; break;
    case CaseLabel::IIA1: r.constituents = {"two_sided_box", "balanced_small_square", "radius_caps"}; break;
    case CaseLabel::IIA2: r.constituents = {"two_sided_box", "radius_caps"}; break;
    case CaseLabel::IIB1: r.constituents = {"two_sided_box", "small_square", "radius_caps", "n_window"}; break;
    case CaseLabel::IIB2: r.constituents = {"two_sided_box", "radius_caps"}; break;
    }
    return r;
}

std::vector<ExponentPoint> boundary_vertices(const std::optional<Rat>& b_max) {
    std::vector<Line> lines = {
        {0, 1, Rat(4, 7)},      {0, 1, Rat(2, 3)},  {1, 0, Rat(16, 27)}, {1, 2, Rat(52, 27)},
        {1, Rat(4, 9), Rat(8, 9)}, {1, -1, 0},      {1, 0, 0},           {0, 1, 1},
    };
    if (b_max)
        lines.push_back({0, 1, *b_max});
    std::set<ExponentPoint> out;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const Line& l = lines[i];
            const Line& m = lines[j];
            Rat det = l.alpha * m.beta - l.beta * m.alpha;
            if (det == 0)
                continue;
            ExponentPoint p{(l.gamma * m.beta - l.beta * m.gamma) / det, (l.alpha * m.gamma - l.gamma * m.alpha) / det};
            if (in_simplex(p) && (!b_max || p.b <= *b_max))
                out.insert(p);
        }
    return {out.begin(), out.end()};
}

SupremumReport exponent_supremum(int resolution, Branch branch, const std::optional<Rat>& b_max) {
    if (resolution < 1)
        fail(ErrorCode::DomainError, "exponent_supremum: resolution must be positive");
    auto value = [branch](const ExponentPoint& p) {
        CaseReport r = case_exponent(p);
        switch (branch) {
        case Branch::CaseOne: return r.case_one;
        case Branch::CaseTwo: return r.case_two;
        case Branch::Overall: break;
        }
        return r.exponent;
    };
    std::set<ExponentPoint> points;
    for (int j = 0; j <= resolution; ++j) {
        Rat b(j, resolution);
        if (b_max && b > *b_max)
            break;
        for (int i = 0; i <= j; ++i)
            points.insert({Rat(i, resolution), b});
    }
    for (const auto& v : boundary_vertices(b_max))
        points.insert(v);

    SupremumReport report{-1, {}};
    for (const auto& p : points) {
        Rat e = value(p);
        if (e > report.supremum) {
            report.supremum = e;
            report.attained_at.clear();
        }
        if (e == report.supremum)
            report.attained_at.push_back(p);
    }
    return report;
}

std::optional<std::pair<Int, Int>> n_window(const Int& q1, const Int& q2, const Int& T, const Rat& eps) {
    if (!(1 <= q1 && q1 <= q2 && q2 <= T))
        fail(ErrorCode::DomainError, "n_window: need 1 <= q1 <= q2 <= T");
    if (eps < 0)
        fail(ErrorCode::DomainError, "n_window: eps must be >= 0");
    const Rat x = Rat(20, 27);
    Monomial upper({{q1, 1}, {q2, Rat(-1, 2) - eps}, {T, x + 2 * eps}});
    Monomial lower_mixed({{q1, Rat(5, 4) + eps}, {q2, Rat(3, 2) + eps}, {T, -x - eps}});
    Monomial lower_pure({{q1, Rat(5, 4) + eps}, {T, Rat(7, 27)}});

    Int lo = smallest_satisfying(
        [&](const Int& N) { return lower_mixed.compare_square(N) >= 0 && lower_pure.compare_square(N) >= 0; },
        std::max(lower_mixed.sqrt_estimate(), lower_pure.sqrt_estimate()));
    Int hi = smallest_satisfying([&](const Int& N) { return upper.compare_square(N) > 0; }, upper.sqrt_estimate()) - 1;
    if (lo > hi)
        return std::nullopt;
    return std::make_pair(lo, hi);
}

Int balanced_N(const Int& q1, const Int& q2) {
    if (q1 < 1 || q2 < 1)
        fail(ErrorCode::DomainError, "balanced_N: need q1, q2 >= 1");
    return arith::iroot_ceil(pow(q1, 9) * pow(q2, 4), 16);
}

Int two_sided_N(const Int& q2) {
    if (q2 < 1)
        fail(ErrorCode::DomainError, "two_sided_N: need q2 >= 1");
    return arith::iroot_ceil(pow(q2, 3), 4);
}

TwoSidedBoxVerdict two_sided_box_check(const Int& q1, const Int& q2, const Rat& X1, const Rat& X2,
                                       const Rat& ceiling) {
    if (arith::gcd(q1, q2) != 1)
        fail(ErrorCode::NotCoprime, "two_sided_box_check: q1 and q2 must be coprime");
    if (ceiling < 0)
        fail(ErrorCode::DomainError, "two_sided_box_check: ceiling must be >= 0");
    // X > ceiling * sqrt(q2)  <=>  X^2 > ceiling^2 q2  (X >= 0)
    Rat threshold = ceiling * ceiling * q2;
    if (X1 <= 0 || X2 <= 0 || X1 * X1 <= threshold || X2 * X2 <= threshold)
        return {TwoSidedBoxVerdict::Status::Vacuous, 0, std::nullopt};
    Int N = two_sided_N(q2);
    auto trace = zaharescu::construct_small_square(q1, q2, N);
    bool inside = Rat(boost::multiprecision::abs(trace.witness.x1)) <= X1 &&
                  Rat(boost::multiprecision::abs(trace.witness.x2)) <= X2;
    return {inside ? TwoSidedBoxVerdict::Status::WitnessInBox : TwoSidedBoxVerdict::Status::Flagged, N, trace};
}

} // namespace sqap::bounds
