#include "sqap/lattice.hpp"

#include "sqap/arith.hpp"

#include <algorithm>

namespace sqap::lattice {

namespace {

template <class I>
I iabs(const I& x) {
    return x < 0 ? I(-x) : x;
}

// Floor and ceiling of a/b for b > 0; both types truncate toward zero.
template <class I>
I floor_div(const I& a, const I& b) {
    I q = a / b;
    if (a % b != 0 && a < 0)
        q -= 1;
    return q;
}

template <class I>
I ceil_div(const I& a, const I& b) {
    return -floor_div(I(-a), b);
}

Int sign_of(const Int& x) { return x < 0 ? Int(-1) : Int(1); }

// Reduce the first entry of each row with the Euclidean algorithm until one
// row carries the gcd and every other row has a zero there.
template <std::size_t W>
void clear_leading_column(std::vector<std::array<Int, W>>& rows) {
    for (;;) {
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i][0] != 0 && (pivot == rows.size() || abs(rows[i][0]) < abs(rows[pivot][0])))
                pivot = i;
        if (pivot == rows.size())
            return;
        bool done = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == pivot || rows[i][0] == 0)
                continue;
            Int k = rows[i][0] / rows[pivot][0];
            for (std::size_t c = 0; c < W; ++c)
                rows[i][c] -= k * rows[pivot][c];
            if (rows[i][0] != 0)
                done = false;
        }
        if (done) {
            std::swap(rows[0], rows[pivot]);
            return;
        }
    }
}

Int gauge_key(const Vec2& y, const Int& P, const Int& Q) {
    return std::max(Int(abs(y[0]) * P), Int(abs(y[1]) * Q));
}

// Sign-normalised point of a column together with its coordinates in the
// reduced basis and its scaled gauge max(|y1| P, |y2| Q).
struct Pick {
    Int h;
    Vec2 y;
    Int i, j;
};

Vec2 normalised(Vec2 y) {
    if (y[0] < 0 || (y[0] == 0 && y[1] < 0))
        y = {-y[0], -y[1]};
    return y;
}

bool pick_before(const Pick& a, const Pick& b) {
    if (a.h != b.h)
        return a.h < b.h;
    return attainer_before(a.y, b.y);
}

// The coset j*b1 + Z*b0. Along it the scaled gauge is convex and piecewise
// linear in the coefficient i, so its integer minima sit next to breakpoints.
class Column {
public:
    Column(const Int& P, const Int& Q, const Vec2& b0, const Vec2& b1, Int j)
        : P_(P), Q_(Q), b0_(b0), off_{j * b1[0], j * b1[1]}, j_(std::move(j)) {}

    Vec2 point(const Int& i) const { return {i * b0_[0] + off_[0], i * b0_[1] + off_[1]}; }

    Int gauge(const Int& i) const {
        Vec2 y = point(i);
        return std::max(Int(abs(y[0]) * P_), Int(abs(y[1]) * Q_));
    }

    // Order-first point among coefficients in [lo, hi] (either side may be open).
    std::optional<Pick> best(const std::optional<Int>& lo, const std::optional<Int>& hi) const {
        if (lo && hi && *lo > *hi)
            return std::nullopt;
        auto clamp = [&](Int i) {
            if (lo && i < *lo)
                i = *lo;
            if (hi && i > *hi)
                i = *hi;
            return i;
        };

        std::vector<Int> trial;
        auto around = [&](const Int& num, const Int& den, std::vector<Int>& into) {
            if (den == 0)
                return;
            Int n = den < 0 ? Int(-num) : num, dd = abs(den);
            into.push_back(clamp(floor_div(n, dd)));
            into.push_back(clamp(ceil_div(n, dd)));
        };
        around(-off_[0], b0_[0], trial);
        around(-off_[1], b0_[1], trial);
        around(Q_ * off_[1] - P_ * off_[0], P_ * b0_[0] - Q_ * b0_[1], trial);
        around(-Q_ * off_[1] - P_ * off_[0], P_ * b0_[0] + Q_ * b0_[1], trial);
        if (lo)
            trial.push_back(*lo);
        if (hi)
            trial.push_back(*hi);
        Int m = gauge(trial.front());
        for (const auto& i : trial)
            m = std::min(m, gauge(i));

        // Coefficients attaining m form an interval.
        std::optional<Int> s_lo = lo, s_hi = hi;
        const std::array<Int, 2> radius{m / P_, m / Q_};
        for (int k = 0; k < 2; ++k) {
            Int a = b0_[k], c = off_[k];
            if (a == 0)
                continue;
            if (a < 0) {
                a = -a;
                c = -c;
            }
            Int l = ceil_div(Int(-radius[k] - c), a), h = floor_div(Int(radius[k] - c), a);
            if (!s_lo || l > *s_lo)
                s_lo = l;
            if (!s_hi || h < *s_hi)
                s_hi = h;
        }

        auto clamp_s = [&](Int i) { return std::min(std::max(i, *s_lo), *s_hi); };
        std::vector<Int> order{*s_lo, *s_hi};
        std::vector<Int> roots;
        around(-off_[0], b0_[0], roots);
        around(-off_[1], b0_[1], roots);
        for (const auto& r : roots)
            order.push_back(clamp_s(r));

        std::optional<Pick> out;
        for (const auto& i : order) {
            Pick p{m, normalised(point(i)), i, j_};
            if (gauge(i) != m)
                continue;
            if (!out || pick_before(p, *out))
                out = p;
        }
        return out;
    }

private:
    Int P_, Q_;
    Vec2 b0_, off_;
    Int j_;
};

bool independent(const Vec2& a, const Vec2& b) { return a[0] * b[1] != a[1] * b[0]; }

bool in_congruence(const Vec2& x, const Int& d, const Int& qt1, const Int& qt2) {
    return arith::mod(x[0] * qt1 + x[1] * qt2, d) == 0;
}

} // namespace

bool Lattice2::contains(const Vec2& x) const {
    // Solve x = s*row0 + t*row1 over the rationals and test integrality.
    const auto& r0 = basis[0];
    const auto& r1 = basis[1];
    Int det01 = r0[0] * r1[1] - r0[1] * r1[0];
    Int s = x[0] * r1[1] - x[1] * r1[0];
    Int t = r0[0] * x[1] - r0[1] * x[0];
    return s % det01 == 0 && t % det01 == 0;
}

Lattice2 congruence_lattice(const Int& d, const Int& qt1, const Int& qt2) {
    if (d < 1)
        fail(ErrorCode::DomainError, "congruence_lattice: modulus must be positive");
    if (arith::gcd(arith::gcd(qt1, qt2), d) != 1)
        fail(ErrorCode::DomainError, "congruence_lattice: gcd(qt1, qt2, d) must be 1");

    // Integer kernel of (qt1, qt2, d): rows [value | identity].
    std::vector<std::array<Int, 4>> rows{{qt1, 1, 0, 0}, {qt2, 0, 1, 0}, {d, 0, 0, 1}};
    clear_leading_column(rows);

    // Project the two kernel rows onto (x1, x2), then bring them to HNF.
    std::vector<std::array<Int, 2>> gens{{rows[1][1], rows[1][2]}, {rows[2][1], rows[2][2]}};
    clear_leading_column(gens);
    Vec2 top{gens[0][0], gens[0][1]};
    Vec2 bottom{gens[1][0], gens[1][1]};
    if (top[0] < 0)
        top = {-top[0], -top[1]};
    if (bottom[1] < 0)
        bottom[1] = -bottom[1];
    Int k = floor_div(top[1], bottom[1]);
    top[1] -= k * bottom[1];

    Lattice2 L{{top, bottom}, top[0] * bottom[1]};
    if (L.det != d)
        fail(ErrorCode::DomainError, "congruence_lattice: unexpected determinant");
    return L;
}

Rat gauge_squared(const Vec2& x, const Rat& U) {
    if (U <= 0)
        fail(ErrorCode::DomainError, "gauge_squared: U must be positive");
    Rat a = Rat(x[0] * x[0]) * U;
    Rat b = Rat(x[1] * x[1]) / U;
    return std::max(a, b);
}

bool attainer_before(const Vec2& a, const Vec2& b) {
    if (abs(a[0]) != abs(b[0]))
        return abs(a[0]) < abs(b[0]);
    if (abs(a[1]) != abs(b[1]))
        return abs(a[1]) < abs(b[1]);
    return a[1] > b[1];
}

BoxMinima box_minima(const Lattice2& L, const Rat& U) {
    if (U <= 0)
        fail(ErrorCode::DomainError, "box_minima: U must be positive");
    const Int P = numerator(U), Q = denominator(U);
    const Int det = abs(L.basis[0][0] * L.basis[1][1] - L.basis[0][1] * L.basis[1][0]);
    if (det == 0)
        fail(ErrorCode::DomainError, "box_minima: degenerate basis");

    // Lagrange reduction under P^2 x1^2 + Q^2 x2^2.
    const Int P2 = P * P, Q2 = Q * Q;
    auto form = [&](const Vec2& x) { return P2 * x[0] * x[0] + Q2 * x[1] * x[1]; };
    auto inner = [&](const Vec2& x, const Vec2& y) { return P2 * x[0] * y[0] + Q2 * x[1] * y[1]; };
    Vec2 b0 = L.basis[0], b1 = L.basis[1];
    for (;;) {
        if (form(b1) < form(b0))
            std::swap(b0, b1);
        Int n0 = form(b0);
        Int ip = inner(b0, b1);
        // Nearest integer to ip / n0.
        Int mu = floor_div(Int(2 * ip + n0), Int(2 * n0));
        if (mu == 0)
            break;
        b1[0] -= mu * b0[0];
        b1[1] -= mu * b0[1];
    }

    const Int R = std::max(gauge_key(b0, P, Q), gauge_key(b1, P, Q));
    // Every point with gauge key <= R has |j| <= J, j being its b1-coefficient:
    // j = det(b0, y) / det(b0, b1).
    const Int J = (abs(b0[0]) * (R / Q) + abs(b0[1]) * (R / P)) / det;

    std::vector<Column> columns;
    for (Int j = 1; j <= J; ++j)
        columns.emplace_back(P, Q, b0, b1, j);

    // Columns j and -j are negatives of each other, so j > 0 suffices.
    Pick first{gauge_key(b0, P, Q), normalised(b0), 1, 0};
    for (const auto& col : columns)
        if (auto p = col.best(std::nullopt, std::nullopt); p && pick_before(*p, first))
            first = *p;

    std::optional<Pick> second;
    auto offer = [&](const std::optional<Pick>& p) {
        if (p && (!second || pick_before(*p, *second)))
            second = p;
    };
    if (first.j != 0)
        offer(Pick{gauge_key(b0, P, Q), normalised(b0), 1, 0});
    for (std::size_t k = 0; k < columns.size(); ++k) {
        Int j = Int(k + 1);
        // The only point of this column parallel to the first minimum.
        if (first.j != 0 && (j * first.i) % first.j == 0) {
            Int skip = j * first.i / first.j;
            offer(columns[k].best(std::nullopt, Int(skip - 1)));
            offer(columns[k].best(Int(skip + 1), std::nullopt));
        } else {
            offer(columns[k].best(std::nullopt, std::nullopt));
        }
    }
    if (!second)
        fail(ErrorCode::DomainError, "box_minima: no independent vector within the search radius");

    const Int pq = P * Q;
    return {Rat(first.h * first.h, pq), Rat(second->h * second->h, pq), first.y, second->y};
}

ReductionStep reduce_step(const Int& q1, const Int& q2, const Rat& x1_bound, const Rat& x2_bound) {
    if (q1 < 1 || q2 < 1)
        fail(ErrorCode::DomainError, "reduce_step: steps must be positive");
    if (x1_bound < 1 || x2_bound < 1)
        fail(ErrorCode::DomainError, "reduce_step: radii must be at least 1");

    ReductionStep s;
    s.swapped = x1_bound > x2_bound;
    s.q1 = s.swapped ? q2 : q1;
    s.q2 = s.swapped ? q1 : q2;
    s.x1_bound = s.swapped ? x2_bound : x1_bound;
    s.x2_bound = s.swapped ? x1_bound : x2_bound;

    s.d = arith::gcd(s.q1, s.q2);
    if (s.d < 2)
        fail(ErrorCode::DomainError, "reduce_step: gcd(q1, q2) must be at least 2");
    s.qt1 = s.q1 / s.d;
    s.qt2 = s.q2 / s.d;
    s.U = s.x2_bound / s.x1_bound;

    auto L = congruence_lattice(s.d, s.qt1, s.qt2);
    auto m = box_minima(L, s.U);
    s.lambda1_sq = m.lambda1_sq;
    s.lambda2_sq = m.lambda2_sq;
    s.u = m.u;
    s.v = m.v;
    s.p1 = (s.u[0] * s.qt1 + s.u[1] * s.qt2) / s.d;
    s.p2 = (s.v[0] * s.qt1 + s.v[1] * s.qt2) / s.d;

    Rat area = s.x1_bound * s.x2_bound;
    s.xt1_sq = area / (4 * s.lambda1_sq);
    s.xt2_sq = area / (4 * s.lambda2_sq);
    s.xt1_floor = arith::isqrt(floor(s.xt1_sq));
    s.xt2_floor = arith::isqrt(floor(s.xt2_sq));
    return s;
}

TwoDAP derived_progression(const ReductionStep& step) {
    if (step.p1 == 0 || step.p2 == 0)
        fail(ErrorCode::DomainError, "derived_progression: a derived step size is zero");
    return TwoDAP(abs(step.p1), abs(step.p2), Rat(step.xt1_floor), Rat(step.xt2_floor));
}

Vec2 embed(const ReductionStep& step, const Int& alpha1, const Int& alpha2) {
    Int a1 = sign_of(step.p1) * alpha1;
    Int a2 = sign_of(step.p2) * alpha2;
    Vec2 y{a1 * step.u[0] + a2 * step.v[0], a1 * step.u[1] + a2 * step.v[1]};
    if (step.swapped)
        std::swap(y[0], y[1]);
    return y;
}

std::string to_string(ReductionVerdict::Status s) {
    switch (s) {
    case ReductionVerdict::Status::Pass: return "pass";
    case ReductionVerdict::Status::HypothesisFails: return "hypothesis_fails";
    case ReductionVerdict::Status::Fail: return "fail";
    }
    return "?";
}

ReductionVerdict verify_reduction(const ReductionStep& step, const TwoDAP& ap, const Int& T,
                                  std::uint64_t guard) {
    using Status = ReductionVerdict::Status;
    auto failed = [](std::string why) { return ReductionVerdict{Status::Fail, std::move(why)}; };

    const Int& in_q1 = step.swapped ? step.q2 : step.q1;
    const Int& in_q2 = step.swapped ? step.q1 : step.q2;
    const Rat& in_x1 = step.swapped ? step.x2_bound : step.x1_bound;
    const Rat& in_x2 = step.swapped ? step.x1_bound : step.x2_bound;
    if (ap.q1() != in_q1 || ap.q2() != in_q2 || ap.x1_bound() != in_x1 || ap.x2_bound() != in_x2)
        return failed("step was not produced from this progression");

    if (step.d < 2 || step.d != arith::gcd(step.q1, step.q2))
        return failed("d is not gcd(q1, q2) >= 2");
    if (step.qt1 * step.d != step.q1 || step.qt2 * step.d != step.q2 || arith::gcd(step.qt1, step.qt2) != 1)
        return failed("reduced steps are inconsistent");
    if (step.x1_bound > step.x2_bound || step.U != step.x2_bound / step.x1_bound)
        return failed("U is not X2/X1 >= 1");
    if (!in_congruence(step.u, step.d, step.qt1, step.qt2) || !in_congruence(step.v, step.d, step.qt1, step.qt2))
        return failed("u or v is not a lattice vector");
    if (!independent(step.u, step.v))
        return failed("u and v are dependent");
    if (gauge_squared(step.u, step.U) != step.lambda1_sq || gauge_squared(step.v, step.U) != step.lambda2_sq ||
        step.lambda1_sq > step.lambda2_sq)
        return failed("minima do not match their attainers");
    if (step.u[0] * step.qt1 + step.u[1] * step.qt2 != step.d * step.p1 ||
        step.v[0] * step.qt1 + step.v[1] * step.qt2 != step.d * step.p2)
        return failed("p1 or p2 identity fails");
    Rat area = step.x1_bound * step.x2_bound;
    if (step.xt1_sq != area / (4 * step.lambda1_sq) || step.xt2_sq != area / (4 * step.lambda2_sq) ||
        step.xt1_floor != arith::isqrt(floor(step.xt1_sq)) || step.xt2_floor != arith::isqrt(floor(step.xt2_sq)))
        return failed("derived radii are inconsistent");
    Rat product = step.lambda1_sq * step.lambda2_sq;
    Rat d2 = Rat(step.d * step.d);
    if (product < d2 / 4 || product > d2)
        return failed("lambda1 lambda2 outside [d/2, d]");

    Int count = (2 * step.xt1_floor + 1) * (2 * step.xt2_floor + 1);
    if (count > guard)
        fail(ErrorCode::TooLarge, "verify_reduction: derived box exceeds the enumeration guard");
    const Int dd = step.d * step.d;
    for (Int a1 = -step.xt1_floor; a1 <= step.xt1_floor; ++a1)
        for (Int a2 = -step.xt2_floor; a2 <= step.xt2_floor; ++a2) {
            Vec2 x = embed(step, a1, a2);
            if (abs(x[0]) > ap.b1() || abs(x[1]) > ap.b2())
                return failed("embedded point leaves the box");
            if (x[0] * ap.q1() + x[1] * ap.q2() != dd * (a1 * abs(step.p1) + a2 * abs(step.p2)))
                return failed("value identity fails");
        }

    if (auto w = brute_force_witness(ap, guard))
        return {Status::HypothesisFails, "input contains " + to_decimal(w->n) + "^2"};
    if (step.p1 == 0 || step.p2 == 0)
        return {Status::Pass, "degenerate derived progression"};

    TwoDAP derived = derived_progression(step);
    if (auto w = brute_force_witness(derived, guard))
        return failed("derived progression contains " + to_decimal(w->n) + "^2");
    Int derived_T = T / dd;
    if (certify_square_free(ap, T).kind == Certificate::Kind::SquareFree &&
        certify_square_free(derived, derived_T).kind != Certificate::Kind::SquareFree)
        return failed("bounded certificate does not transfer");
    if (is_proper(ap) && !is_proper(derived))
        return failed("properness does not transfer");
    return {Status::Pass, ""};
}

std::string to_string(ReductionChain::Terminal t) {
    switch (t) {
    case ReductionChain::Terminal::Coprime: return "coprime";
    case ReductionChain::Terminal::OneDimensional: return "one_dimensional";
    case ReductionChain::Terminal::SmallGcdSmallBox: return "small_gcd_small_box";
    case ReductionChain::Terminal::LargeGcd: return "large_gcd";
    case ReductionChain::Terminal::Degenerate: return "degenerate";
    }
    return "?";
}

std::string to_string(ChainStep::Kind k) {
    return k == ChainStep::Kind::DivideOut ? "divide_out" : "lattice";
}

ReductionChain reduce_recursive(const Int& q1, const Int& q2, const Rat& x1_bound, const Rat& x2_bound,
                                const Int& T, const ReduceOptions& options) {
    using Terminal = ReductionChain::Terminal;
    if (T < 0)
        fail(ErrorCode::DomainError, "reduce_recursive: T must be non-negative");

    ReductionChain chain{{}, Terminal::Coprime, TwoDAP(q1, q2, x1_bound, x2_bound), T, {}, {}};
    for (;;) {
        const TwoDAP cur = chain.final_instance;
        const Int curT = chain.final_T;
        auto finish = [&](Terminal t) { chain.terminal = t; };

        if (cur.b1() == 0 || cur.b2() == 0)
            return finish(Terminal::OneDimensional), chain;
        const Int d = arith::gcd(cur.q1(), cur.q2());
        if (d == 1)
            return finish(Terminal::Coprime), chain;

        if (d <= options.small_gcd_limit) {
            if (cur.x1_bound() < d || cur.x2_bound() < d)
                return finish(Terminal::SmallGcdSmallBox), chain;
            TwoDAP next(cur.q1() / d, cur.q2() / d, cur.x1_bound() / d, cur.x2_bound() / d);
            chain.steps.push_back({ChainStep::Kind::DivideOut, cur, curT, d, std::nullopt, next, curT / (d * d),
                                   Vec2{d, 0}, Vec2{0, d}});
        } else if (d * d >= curT) {
            Int qt1 = cur.q1() / d, qt2 = cur.q2() / d;
            chain.proper = is_proper(cur);
            chain.dichotomy = cur.b1() <= qt2 || cur.b2() <= qt1;
            return finish(Terminal::LargeGcd), chain;
        } else {
            auto step = reduce_step(cur.q1(), cur.q2(), cur.x1_bound(), cur.x2_bound());
            if (step.p1 == 0 || step.p2 == 0)
                return finish(Terminal::Degenerate), chain;
            TwoDAP next = derived_progression(step);
            Vec2 e1 = embed(step, 1, 0), e2 = embed(step, 0, 1);
            chain.steps.push_back({ChainStep::Kind::Lattice, cur, curT, d, step, next, curT / (d * d), e1, e2});
        }
        chain.final_instance = chain.steps.back().derived;
        chain.final_T = chain.steps.back().derived_T;
    }
}

} // namespace sqap::lattice
