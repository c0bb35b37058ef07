#include "sqap/progression.hpp"

#include "sqap/arith.hpp"

#include <algorithm>

namespace sqap {

namespace {

using boost::multiprecision::abs;

struct WitnessKey {
    Int n, abs_x1;
    bool negative;
};

// Smallest x ≡ r (mod m) with x >= from.
Int first_at_or_above(const Int& from, const Int& r, const Int& m) { return from + arith::mod(r - from, m); }

// Largest x ≡ r (mod m) with x <= to.
Int last_at_or_below(const Int& to, const Int& r, const Int& m) { return to - arith::mod(to - r, m); }

// Smallest step such that step | n implies d | n^2.
Int square_divisibility_step(const Int& d) {
    Int step = 1;
    for (const auto& [p, e] : arith::factorize(d))
        step *= boost::multiprecision::pow(p, (e + 1) / 2);
    return step;
}

template <class Value>
std::optional<SquareWitness> scan_box(Value q1, Value q2, Value b1, Value b2) {
    std::optional<SquareWitness> best;
    Value best_n = 0, best_abs = 0;
    bool best_negative = false;
    for (Value x1 = -b1; x1 <= b1; ++x1) {
        Value abs_x1 = x1 < 0 ? -x1 : x1;
        for (Value x2 = -b2; x2 <= b2; ++x2) {
            Value v = x1 * q1 + x2 * q2;
            if (v < 1 || !arith::is_perfect_square(v))
                continue;
            Value n;
            if constexpr (std::is_same_v<Value, Int>)
                n = arith::isqrt(v);
            else
                n = static_cast<Value>(arith::isqrt(Int(v)));
            bool better = !best || n < best_n || (n == best_n && abs_x1 < best_abs) ||
                          (n == best_n && abs_x1 == best_abs && best_negative && x1 > 0);
            if (better) {
                best = SquareWitness{Int(x1), Int(x2), Int(n)};
                best_n = n;
                best_abs = abs_x1;
                best_negative = x1 < 0;
            }
        }
    }
    return best;
}

} // namespace

TwoDAP::TwoDAP(Int q1, Int q2, Rat x1_bound, Rat x2_bound)
    : q1_(std::move(q1)), q2_(std::move(q2)), x1_bound_(std::move(x1_bound)), x2_bound_(std::move(x2_bound)) {
    if (q1_ < 1 || q2_ < 1)
        fail(ErrorCode::DomainError, "TwoDAP: steps must be >= 1");
    if (x1_bound_ < 0 || x2_bound_ < 0)
        fail(ErrorCode::DomainError, "TwoDAP: radii must be >= 0");
    b1_ = floor(x1_bound_);
    b2_ = floor(x2_bound_);
}

void check_witness(const TwoDAP& ap, const SquareWitness& w) {
    if (w.n < 1)
        fail(ErrorCode::DomainError, "witness: n must be >= 1");
    if (abs(w.x1) > ap.b1() || abs(w.x2) > ap.b2())
        fail(ErrorCode::DomainError, "witness: coefficients outside the box");
    if (w.x1 * ap.q1() + w.x2 * ap.q2() != w.n * w.n)
        fail(ErrorCode::DomainError, "witness: x1 q1 + x2 q2 != n^2");
}

bool witness_before(const SquareWitness& a, const SquareWitness& b) {
    if (a.n != b.n)
        return a.n < b.n;
    Int aa = abs(a.x1), ab = abs(b.x1);
    if (aa != ab)
        return aa < ab;
    return a.x1 > b.x1;
}

Int cardinality(const TwoDAP& ap) { return (2 * ap.b1() + 1) * (2 * ap.b2() + 1); }

bool is_proper(const TwoDAP& ap) {
    Int d = arith::gcd(ap.q1(), ap.q2());
    bool collision = ap.q2() / d <= 2 * ap.b1() && ap.q1() / d <= 2 * ap.b2();
    return !collision;
}

std::optional<SquareWitness> find_square_witness(const TwoDAP& ap, const Int& T) {
    if (T < 0)
        fail(ErrorCode::DomainError, "find_square_witness: T must be >= 0");
    Int limit = std::min(T, ap.value_bound());
    if (limit < 1)
        return std::nullopt;
    const Int n_max = arith::isqrt(limit);

    const Int& q1 = ap.q1();
    const Int& q2 = ap.q2();
    const Int d = arith::gcd(q1, q2);
    const Int q1r = q1 / d;
    const Int q2r = q2 / d;
    const Int inv = arith::mod_inverse(q1r, q2r);
    const Int reach = ap.b2() * q2;

    Int step = 1;
    try {
        step = square_divisibility_step(d);
    } catch (const Error&) {
        step = 1;
    }

    for (Int n = step; n <= n_max; n += step) {
        Int s = n * n;
        if (s % d != 0)
            continue;
        Int r = arith::mod((s / d) * inv, q2r);
        // |s - x1 q1| <= B2 q2 keeps x2 inside the box.
        Int lo = std::max(Int(-ap.b1()), ceil(Rat(s - reach, q1)));
        Int hi = std::min(ap.b1(), floor(Rat(s + reach, q1)));
        if (lo > hi)
            continue;
        std::optional<Int> pick;
        Int up = first_at_or_above(std::max(lo, Int(0)), r, q2r);
        if (up <= hi)
            pick = up;
        if (lo < 0) {
            Int down = last_at_or_below(std::min(hi, Int(-1)), r, q2r);
            if (down >= lo && (!pick || -down < *pick))
                pick = down;
        }
        if (!pick)
            continue;
        SquareWitness w{*pick, (s - *pick * q1) / q2, n};
        check_witness(ap, w);
        return w;
    }
    return std::nullopt;
}

Certificate certify_square_free(const TwoDAP& ap, const Int& T) {
    if (auto w = find_square_witness(ap, T))
        return {Certificate::Kind::Witness, w, w->n};
    // Squares above value_bound() cannot occur, so every n with n^2 <= T is ruled out.
    return {Certificate::Kind::SquareFree, std::nullopt, arith::isqrt(T)};
}

std::optional<SquareWitness> brute_force_witness(const TwoDAP& ap, std::uint64_t guard) {
    if (cardinality(ap) > guard)
        fail(ErrorCode::TooLarge, "brute_force_witness: box has " + cardinality(ap).str() + " points");
    static const Int fast_limit = Int(1) << 62;
    std::optional<SquareWitness> w;
    if (ap.value_bound() < fast_limit) {
        w = scan_box<std::int64_t>(static_cast<std::int64_t>(ap.q1()), static_cast<std::int64_t>(ap.q2()),
                                   static_cast<std::int64_t>(ap.b1()), static_cast<std::int64_t>(ap.b2()));
    } else {
        w = scan_box<Int>(ap.q1(), ap.q2(), ap.b1(), ap.b2());
    }
    if (w)
        check_witness(ap, *w);
    return w;
}

} // namespace sqap
