#include "sqap/zaharescu.hpp"

#include "sqap/arith.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace sqap::zaharescu {

namespace {

using boost::multiprecision::abs;
using i128 = __int128;

// Nearest integer to num/den (den > 0), halves rounded toward zero.
Int round_half_to_zero(const Int& num, const Int& den) {
    Int fl = floor(Rat(num, den));
    Int twice_frac = 2 * (num - fl * den);
    if (twice_frac < den)
        return fl;
    if (twice_frac > den)
        return fl + 1;
    return fl >= 0 ? fl : Int(fl + 1);
}

DirichletPoint finish(const Int& n, const Int& numerator, const Int& modulus, const Int& N) {
    Int m = round_half_to_zero(-n * numerator, modulus);
    Int approx = n * numerator + m * modulus;
    if (abs(approx) * N > modulus)
        throw std::logic_error("Dirichlet approximation bound violated");
    return {n, m, approx};
}

void require_positive(const Int& v, const char* what) {
    if (v < 1)
        fail(ErrorCode::DomainError, std::string(what) + " must be >= 1");
}

Int to_int(i128 v) {
    bool negative = v < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Int result = static_cast<std::uint64_t>(mag >> 64);
    result <<= 64;
    result += static_cast<std::uint64_t>(mag);
    return negative ? Int(-result) : result;
}

} // namespace

Int square_class_radius(const Int& k_in, std::int64_t guard) {
    if (k_in < 1)
        fail(ErrorCode::DomainError, "square_class_radius: k must be >= 1");
    if (k_in > guard)
        fail(ErrorCode::TooLarge, "square_class_radius: k = " + k_in.str() + " exceeds the enumeration guard");
    const auto k = static_cast<std::int64_t>(k_in);
    if (k == 1)
        return 1;
    std::vector<char> unit(static_cast<std::size_t>(k), 0);
    std::int64_t remaining = 0;
    for (std::int64_t x = 1; x < k; ++x)
        if (std::gcd(x, k) == 1) {
            unit[x] = 1;
            ++remaining;
        }
    std::vector<char> is_square(static_cast<std::size_t>(k), 0);
    std::vector<std::int64_t> squares;
    for (std::int64_t z = 1; z < k; ++z) {
        if (!unit[z])
            continue;
        std::int64_t s = z * z % k;
        if (!is_square[s]) {
            is_square[s] = 1;
            squares.push_back(s);
        }
    }
    std::vector<char> covered(static_cast<std::size_t>(k), 0);
    for (std::int64_t h = 1;; ++h) {
        for (std::int64_t y : {h % k, (k - h % k) % k}) {
            if (std::gcd(y, k) != 1)
                continue;
            for (std::int64_t s : squares) {
                std::int64_t x = y * s % k;
                if (!covered[x]) {
                    covered[x] = 1;
                    --remaining;
                }
            }
        }
        if (remaining == 0)
            return h;
    }
}

DirichletPoint dirichlet_by_convergents(const Int& numerator, const Int& modulus, const Int& N) {
    require_positive(modulus, "modulus");
    require_positive(N, "N");
    Int num = arith::mod(numerator, modulus);
    Int den = modulus;
    Int k_before = 1, k_last = 0, best = 1;
    while (den != 0) {
        Int a = num / den;
        Int k = a * k_last + k_before;
        if (k > N)
            break;
        if (k >= 1)
            best = k;
        k_before = k_last;
        k_last = k;
        Int r = num - a * den;
        num = den;
        den = r;
    }
    return finish(best, numerator, modulus, N);
}

DirichletPoint dirichlet_by_scan(const Int& numerator, const Int& modulus, const Int& N, std::int64_t guard) {
    require_positive(modulus, "modulus");
    require_positive(N, "N");
    if (N > guard)
        fail(ErrorCode::TooLarge, "dirichlet_by_scan: N exceeds the scan guard");
    Int reduced = arith::mod(numerator, modulus);
    Int best_n = 1, best_dist = modulus;
    for (Int n = 1; n <= N; ++n) {
        Int r = n * reduced % modulus;
        Int dist = std::min(r, Int(modulus - r));
        if (dist < best_dist) {
            best_dist = dist;
            best_n = n;
        }
    }
    return finish(best_n, numerator, modulus, N);
}

void check_trace(const Int& q1, const Int& q2, const Int& N, const ZaharescuTrace& t) {
    auto violated = [](const char* what) { fail(ErrorCode::DomainError, std::string("trace invariant violated: ") + what); };
    if (arith::gcd(t.b, q1) != 1)
        violated("gcd(b, q1) = 1");
    if (arith::mod(t.b * q2 - t.c * t.c, q1) != 0)
        violated("b q2 ≡ c^2 (mod q1)");
    if (arith::mod(t.c * t.c_bar - 1, q1) != 0)
        violated("c c_bar ≡ 1 (mod q1)");
    if (t.n < 1 || t.n > N)
        violated("1 <= n <= N");
    if (t.approx_d != t.n * t.c_bar + t.m * q1)
        violated("approx_d = n c_bar + m q1");
    if (abs(t.approx_d) * N > q1)
        violated("|approx_d| <= q1 / N");
    const SquareWitness& w = t.witness;
    if (w.n != t.n || w.x2 != t.b * t.approx_d * t.approx_d || w.x1 * q1 != t.n * t.n - t.b * q2 * t.approx_d * t.approx_d)
        violated("witness assembly");
    if (w.x1 * q1 + w.x2 * q2 != w.n * w.n)
        violated("x1 q1 + x2 q2 = n^2");
}

ZaharescuTrace construct_small_square(const Int& q1, const Int& q2, const Int& N) {
    require_positive(q1, "q1");
    require_positive(q2, "q2");
    require_positive(N, "N");
    if (arith::gcd(q1, q2) != 1)
        fail(ErrorCode::NotCoprime, "construct_small_square: q1 and q2 must be coprime");

    ZaharescuTrace t;
    // |b| = 1, 2, ... with the positive sign first; |b| <= H(q1) is guaranteed.
    for (Int size = 1; t.b == 0; ++size) {
        for (const Int& b : {size, Int(-size)}) {
            if (arith::gcd(b, q1) != 1)
                continue;
            if (auto root = arith::sqrt_mod(b * q2, q1)) {
                t.b = b;
                t.c = *root;
                break;
            }
        }
    }
    t.c_bar = arith::mod_inverse(t.c, q1);
    DirichletPoint point = dirichlet_by_convergents(t.c_bar, q1, N);
    t.n = point.n;
    t.m = point.m;
    t.approx_d = point.approx_d;
    Int d2 = t.approx_d * t.approx_d;
    Int numer = t.n * t.n - t.b * q2 * d2;
    if (numer % q1 != 0)
        throw std::logic_error("construct_small_square: n^2 - b q2 d^2 not divisible by q1");
    t.witness = SquareWitness{numer / q1, t.b * d2, t.n};
    check_trace(q1, q2, N, t);
    return t;
}

SquareWitness minimal_representation(const Int& q1_in, const Int& q2_in, const Int& N_in, std::uint64_t guard) {
    require_positive(q1_in, "q1");
    require_positive(N_in, "N");
    if (q1_in > q2_in)
        fail(ErrorCode::DomainError, "minimal_representation: need q1 <= q2");
    if (arith::gcd(q1_in, q2_in) != 1)
        fail(ErrorCode::NotCoprime, "minimal_representation: q1 and q2 must be coprime");
    if (q2_in > 1'000'000)
        fail(ErrorCode::TooLarge, "minimal_representation: q2 too large for exhaustive search");
    const Int box = q2_in * q2_in;
    const Int work = N_in * (2 * box / q1_in + 1);
    if (work > guard)
        fail(ErrorCode::TooLarge, "minimal_representation: search exceeds the guard");

    const auto q1 = static_cast<std::int64_t>(q1_in);
    const auto q2 = static_cast<std::int64_t>(q2_in);
    const auto N = static_cast<std::int64_t>(N_in);
    const auto R = static_cast<std::int64_t>(box);
    const auto inv_q2 = static_cast<std::int64_t>(arith::mod_inverse(q2_in, q1_in));

    std::optional<SquareWitness> best;
    std::int64_t best_max = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const i128 sq = static_cast<i128>(n) * n;
        // x2 ≡ n^2 / q2 (mod q1)
        const auto r = static_cast<std::int64_t>((sq % q1) * inv_q2 % q1);
        std::int64_t start = -R + ((r - (-R)) % q1 + q1) % q1;
        for (std::int64_t x2 = start; x2 <= R; x2 += q1) {
            i128 x1 = (sq - static_cast<i128>(x2) * q2) / q1;
            i128 ax1 = x1 < 0 ? -x1 : x1;
            if (ax1 > R)
                continue;
            std::int64_t ax2 = x2 < 0 ? -x2 : x2;
            auto size = static_cast<std::int64_t>(std::max<i128>(ax1, ax2));
            SquareWitness w{to_int(x1), Int(x2), Int(n)};
            if (!best || size < best_max || (size == best_max && witness_before(w, *best))) {
                best = w;
                best_max = size;
            }
        }
    }
    if (!best)
        fail(ErrorCode::NotFound, "minimal_representation: no representation with n <= N in the search box");
    return *best;
}

bool x2_ratio_within(const Int& q1, const Int& N, const SquareWitness& w, const Rat& ceiling) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::pow;
    // (|x2| N^2 / C)^4 <= q1^9
    Rat lhs = Rat(abs(w.x2) * N * N) / ceiling;
    return pow(numerator(lhs), 4) <= pow(q1, 9) * pow(denominator(lhs), 4);
}

bool x1_ratio_within(const Int& q1, const Int& q2, const Int& N, const SquareWitness& w, const Rat& ceiling) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::pow;
    // (|x1|/C - N^2/q1) N^2 / q2 <= q1^(5/4)
    Rat rest = (Rat(abs(w.x1)) / ceiling - Rat(N * N, q1)) * Rat(N * N, q2);
    if (rest <= 0)
        return true;
    return pow(numerator(rest), 4) <= pow(q1, 5) * pow(denominator(rest), 4);
}

double x2_ratio(const Int& q1, const Int& N, const SquareWitness& w) {
    double n = N.convert_to<double>();
    return abs(w.x2).convert_to<double>() * n * n / std::pow(q1.convert_to<double>(), 2.25);
}

double x1_ratio(const Int& q1, const Int& q2, const Int& N, const SquareWitness& w) {
    double n2 = N.convert_to<double>() * N.convert_to<double>();
    double a = q1.convert_to<double>();
    double scale = n2 / a + std::pow(a, 1.25) * q2.convert_to<double>() / n2;
    return abs(w.x1).convert_to<double>() / scale;
}

} // namespace sqap::zaharescu
