#include "sqap/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sqap::arith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1'000'000;

constexpr u64 square_residues_mod64() {
    u64 mask = 0;
    for (u64 r = 0; r < 64; ++r)
        mask |= u64{1} << (r * r % 64);
    return mask;
}
constexpr u64 kSquaresMod64 = square_residues_mod64();

const Int& two_pow_64() {
    static const Int value = Int(1) << 64;
    return value;
}

u64 to_u64(const Int& v) { return static_cast<u64>(v); }

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod_u64(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

bool strong_probable_prime(u64 n, u64 base) {
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = pow_mod_u64(base % n, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's cycle finding on x -> x^2 + c. Returns a nontrivial factor or n.
u64 brent_rho(u64 n, u64 c) {
    auto step = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    constexpr u64 batch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i)
            y = step(y);
        for (u64 k = 0; k < r && g == 1; k += batch) {
            ys = y;
            for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                y = step(y);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u64(q, n);
        }
    }
    if (g == n) {
        do {
            ys = step(ys);
            g = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void split_u64(u64 n, std::vector<u64>& out) {
    if (n == 1)
        return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    for (u64 c = 1;; ++c) {
        u64 f = brent_rho(n, c);
        if (f != n && f != 1) {
            split_u64(f, out);
            split_u64(n / f, out);
            return;
        }
    }
}

std::vector<PrimePower> collect(std::vector<u64>& primes) {
    std::sort(primes.begin(), primes.end());
    std::vector<PrimePower> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().prime == p)
            ++out.back().exponent;
        else
            out.push_back({Int(p), 1});
    }
    return out;
}

std::vector<Int> crt_combine(const std::vector<Int>& left, const Int& left_mod,
                             const std::vector<Int>& right, const Int& right_mod) {
    Int inv = mod_inverse(left_mod, right_mod);
    std::vector<Int> out;
    out.reserve(left.size() * right.size());
    for (const Int& a : left)
        for (const Int& b : right)
            out.push_back(a + left_mod * mod((b - a) * inv, right_mod));
    return out;
}

} // namespace

Int gcd(const Int& a, const Int& b) {
    Int x = boost::multiprecision::abs(a), y = boost::multiprecision::abs(b);
    while (y != 0) {
        x %= y;
        std::swap(x, y);
    }
    return x;
}

ExtendedGcd extended_gcd(const Int& a, const Int& b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0)
        return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Int mod_inverse(const Int& a, const Int& m) {
    if (m < 1)
        fail(ErrorCode::DomainError, "mod_inverse: modulus must be >= 1");
    auto [g, s, t] = extended_gcd(mod(a, m), m);
    if (g != 1)
        fail(ErrorCode::NotInvertible, "mod_inverse: " + a.str() + " is not invertible modulo " + m.str());
    return mod(s, m);
}

Int pow_mod(Int base, Int exp, const Int& m) {
    if (exp < 0)
        fail(ErrorCode::DomainError, "pow_mod: negative exponent");
    Int result = 1 % m;
    base = mod(base, m);
    while (exp > 0) {
        if (bit_test(exp, 0))
            result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

Int isqrt(const Int& n) {
    if (n < 0)
        fail(ErrorCode::DomainError, "isqrt of negative value " + n.str());
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n) {
    if (n < 0)
        return false;
    // Squares occupy 12 of the 64 residues mod 64.
    unsigned low = static_cast<unsigned>(n & 63);
    if (((kSquaresMod64 >> low) & 1) == 0)
        return false;
    Int r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

bool is_perfect_square(std::int64_t n) {
    if (n < 0)
        return false;
    if (((kSquaresMod64 >> (n & 63)) & 1) == 0)
        return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<u128>(r) * static_cast<u128>(r) > static_cast<u128>(n))
        --r;
    while (static_cast<u128>(r + 1) * static_cast<u128>(r + 1) <= static_cast<u128>(n))
        ++r;
    return r * r == n;
}

Int iroot_floor(const Int& n, unsigned k) {
    if (n < 0 || k == 0)
        fail(ErrorCode::DomainError, "iroot_floor: need n >= 0 and k >= 1");
    if (n < 2 || k == 1)
        return n;
    unsigned bits = static_cast<unsigned>(msb(n)) + 1;
    Int x = Int(1) << ((bits + k - 1) / k);
    // Newton from above is monotone and stops at the floor.
    while (true) {
        Int y = ((k - 1) * x + n / boost::multiprecision::pow(x, k - 1)) / k;
        if (y >= x)
            return x;
        x = y;
    }
}

Int iroot_ceil(const Int& n, unsigned k) {
    Int r = iroot_floor(n, k);
    if (boost::multiprecision::pow(r, k) < n)
        ++r;
    return r;
}

std::vector<PrimePower> factorize(const Int& n) {
    if (n < 1)
        fail(ErrorCode::DomainError, "factorize: need n >= 1, got " + n.str());
    std::vector<u64> primes;
    Int rest = n;
    if (rest >= two_pow_64()) {
        for (std::uint32_t p : small_primes()) {
            if (rest < two_pow_64())
                break;
            while (rest % p == 0) {
                rest /= p;
                primes.push_back(p);
            }
        }
        if (rest >= two_pow_64())
            fail(ErrorCode::FactorizationFailed,
                 "factorize: cofactor " + rest.str() + " exceeds the supported range");
    }
    u64 m = to_u64(rest);
    for (std::uint32_t p : small_primes()) {
        if (static_cast<u64>(p) * p > m)
            break;
        while (m % p == 0) {
            m /= p;
            primes.push_back(p);
        }
    }
    split_u64(m, primes);
    return collect(primes);
}

Int squarefree_kernel(const Int& q) {
    if (q <= 0)
        fail(ErrorCode::DomainError, "squarefree_kernel: need q >= 1, got " + q.str());
    Int s = 1;
    for (const auto& [p, e] : factorize(q))
        if (e % 2 == 1)
            s *= p;
    return s;
}

int jacobi(const Int& a_in, const Int& n_in) {
    if (n_in < 1 || !bit_test(n_in, 0))
        fail(ErrorCode::DomainError, "jacobi: modulus must be odd and positive, got " + n_in.str());
    Int n = n_in;
    Int a = mod(a_in, n);
    int result = 1;
    while (a != 0) {
        unsigned twos = 0;
        while (!bit_test(a, 0)) {
            a >>= 1;
            ++twos;
        }
        unsigned n8 = static_cast<unsigned>(n & 7);
        if ((twos & 1) && (n8 == 3 || n8 == 5))
            result = -result;
        if ((static_cast<unsigned>(a & 3) == 3) && (n8 & 3) == 3)
            result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_prime_u64(u64 n) {
    if (n < 2)
        return false;
    if (n < kTrialLimit) {
        if (n % 2 == 0)
            return n == 2;
        for (u64 d = 3; d * d <= n; d += 2)
            if (n % d == 0)
                return false;
        return true;
    }
    if (n % 2 == 0)
        return false;
    static constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 b : bases)
        if (!strong_probable_prime(n, b))
            return false;
    return true;
}

bool is_prime(const Int& n) {
    if (n < 0)
        fail(ErrorCode::DomainError, "is_prime: negative input");
    if (n >= two_pow_64())
        fail(ErrorCode::OutOfRange, "is_prime: " + n.str() + " is beyond the certified range (2^64)");
    return is_prime_u64(to_u64(n));
}

Int least_qnr(const Int& p) {
    if (p < 3 || !bit_test(p, 0) || !is_prime(p))
        fail(ErrorCode::DomainError, "least_qnr: " + p.str() + " is not an odd prime");
    for (Int n = 2;; ++n)
        if (jacobi(n, p) == -1)
            return n;
}

std::uint64_t tonelli_shanks(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0)
        return 0;
    if (p % 4 == 3)
        return pow_mod_u64(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (pow_mod_u64(z, (p - 1) / 2, p) != p - 1)
        ++z;
    u64 c = pow_mod_u64(z, q, p);
    u64 r = pow_mod_u64(a, (q + 1) / 2, p);
    u64 t = pow_mod_u64(a, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
            if (i == m)
                fail(ErrorCode::DomainError, "tonelli_shanks: argument is not a residue");
        }
        u64 b = c;
        for (unsigned j = 0; j + 1 < m - i; ++j)
            b = mul_mod(b, b, p);
        r = mul_mod(r, b, p);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        m = i;
    }
    return r;
}

std::vector<Int> sqrt_mod_prime_power(const Int& a_in, const Int& p, unsigned k) {
    Int pk = boost::multiprecision::pow(p, k);
    Int a = mod(a_in, pk);
    if (p == 2) {
        if (k == 1)
            return {Int(1)};
        if (k == 2)
            return (a & 3) == 1 ? std::vector<Int>{1, 3} : std::vector<Int>{};
        if ((a & 7) != 1)
            return {};
        Int r = 1;
        for (unsigned e = 3; e < k; ++e) {
            Int next = Int(1) << (e + 1);
            if (mod(r * r - a, next) != 0)
                r += Int(1) << (e - 1);
        }
        Int half = Int(1) << (k - 1);
        std::vector<Int> roots{mod(r, pk), mod(-r, pk), mod(r + half, pk), mod(-r + half, pk)};
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        return roots;
    }
    if (jacobi(a, p) != 1)
        return {};
    if (p >= two_pow_64())
        fail(ErrorCode::FactorizationFailed, "sqrt_mod: prime factor beyond 2^64");
    Int r = tonelli_shanks(to_u64(a % p), to_u64(p));
    Int pe = p;
    for (unsigned e = 1; e < k; ++e) {
        pe *= p;
        r = mod(r - (r * r - a) * mod_inverse(2 * r, pe), pe);
    }
    Int other = pk - r;
    return r < other ? std::vector<Int>{r, other} : std::vector<Int>{other, r};
}

std::optional<Int> sqrt_mod(const Int& a_in, const Int& m, const SqrtModOptions& opts) {
    if (m < 1)
        fail(ErrorCode::DomainError, "sqrt_mod: modulus must be >= 1");
    Int a = mod(a_in, m);
    if (gcd(a, m) != 1)
        fail(ErrorCode::NotCoprime, "sqrt_mod: " + a_in.str() + " is not coprime to " + m.str());
    if (m == 1)
        return Int(0);
    if (m <= opts.scan_threshold && m < Int(1) << 31) {
        auto mm = static_cast<std::int64_t>(m);
        auto target = static_cast<std::int64_t>(a);
        std::int64_t sq = 0;
        for (std::int64_t c = 0; c < mm; ++c) {
            if (sq == target)
                return Int(c);
            sq += 2 * c + 1;
            sq %= mm;
        }
        return std::nullopt;
    }
    std::vector<Int> roots{0};
    Int modulus = 1;
    for (const auto& [p, e] : factorize(m)) {
        auto local = sqrt_mod_prime_power(a, p, e);
        if (local.empty())
            return std::nullopt;
        Int pk = boost::multiprecision::pow(p, e);
        roots = crt_combine(roots, modulus, local, pk);
        modulus *= pk;
    }
    return *std::min_element(roots.begin(), roots.end());
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0)
            continue;
        for (std::uint64_t j = i; j <= limit; j += i)
            if (spf[j] == 0)
                spf[j] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

} // namespace sqap::arith
