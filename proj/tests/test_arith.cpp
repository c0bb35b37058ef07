#include "doctest.h"

#include "sqap/arith.hpp"

#include <random>
#include <set>

using namespace sqap;
using namespace sqap::arith;

namespace {

// Independent oracles: plain loops over machine integers.
long scan_inverse(long a, long m) {
    for (long x = 0; x < m; ++x)
        if ((a * x) % m == 1 % m)
            return x;
    return -1;
}

long least_square_multiplier(long q) {
    for (long x = 1;; ++x) {
        long v = x * q;
        long r = 0;
        while ((r + 1) * (r + 1) <= v)
            ++r;
        if (r * r == v)
            return x;
    }
}

bool trial_division_prime(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::optional<long> scan_sqrt(long a, long m) {
    a = ((a % m) + m) % m;
    for (long c = 0; c < m; ++c)
        if ((c * c) % m == a)
            return c;
    return std::nullopt;
}

} // namespace

TEST_CASE("gcd") {
    CHECK(gcd(6, 10) == 2);
    CHECK(gcd(0, 7) == 7);
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(-12, 18) == 6);
    CHECK(gcd(35, 64) == 1);
}

TEST_CASE("mod_inverse") {
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(1, 17) == 1);
    CHECK(scan_inverse(3, 13) == 9);
    CHECK(mod_inverse(3, 13) == 9);
    CHECK(mod_inverse(-3, 13) == 4);
    CHECK(mod_inverse(5, 1) == 0);
    CHECK_THROWS_AS(mod_inverse(4, 6), Error);
    try {
        mod_inverse(4, 6);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInvertible);
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        long m = 1 + static_cast<long>(rng() % 5000);
        long a = static_cast<long>(rng() % 100000) - 50000;
        if (gcd(a, m) != 1)
            continue;
        Int inv = mod_inverse(a, m);
        CHECK(inv >= 0);
        CHECK(inv < m);
        CHECK(mod(Int(a) * inv, m) == 1 % m);
    }
}

TEST_CASE("isqrt and perfect squares") {
    CHECK(isqrt(49) == 7);
    CHECK(is_perfect_square(Int(49)));
    CHECK(isqrt(48) == 6);
    CHECK_FALSE(is_perfect_square(Int(48)));
    CHECK(isqrt(0) == 0);
    CHECK(is_perfect_square(Int(0)));
    CHECK_FALSE(is_perfect_square(Int(-4)));
    CHECK_FALSE(is_perfect_square(std::int64_t{-4}));
    CHECK_THROWS_AS(isqrt(-1), Error);

    Int big = (Int(1) << 127) - 1;
    Int r = isqrt(big);
    CHECK(r * r <= big);
    CHECK((r + 1) * (r + 1) > big);
    CHECK(is_perfect_square(Int(r * r)));
    CHECK_FALSE(is_perfect_square(Int(r * r + 1)));

    for (std::int64_t v = 0; v < 20000; ++v) {
        std::int64_t k = static_cast<std::int64_t>(isqrt(v));
        CHECK(is_perfect_square(v) == (k * k == v));
        CHECK(is_perfect_square(Int(v)) == (k * k == v));
    }
    std::int64_t large = 3037000499LL * 3037000499LL;
    CHECK(is_perfect_square(large));
    CHECK_FALSE(is_perfect_square(large - 1));
}

TEST_CASE("integer roots") {
    CHECK(iroot_ceil(Int(1) << 52, 16) == 10);
    CHECK(iroot_floor(Int(1) << 52, 16) == 9);
    CHECK(iroot_ceil(1000, 3) == 10);
    CHECK(iroot_floor(999, 3) == 9);
    CHECK(iroot_ceil(0, 5) == 0);
    for (int n = 0; n < 3000; ++n)
        for (unsigned k = 1; k <= 5; ++k) {
            Int f = iroot_floor(n, k);
            CHECK(boost::multiprecision::pow(f, k) <= n);
            CHECK(boost::multiprecision::pow(Int(f + 1), k) > n);
        }
}

TEST_CASE("squarefree_kernel") {
    CHECK(squarefree_kernel(12) == 3);
    CHECK(squarefree_kernel(1) == 1);
    CHECK(least_square_multiplier(360) == 10);
    CHECK(squarefree_kernel(360) == 10);
    CHECK_THROWS_AS(squarefree_kernel(0), Error);
    for (long q = 1; q <= 10000; ++q) {
        Int s = squarefree_kernel(q);
        CHECK(q % s == 0);
        CHECK(is_perfect_square(Int(q / s)));
        for (const auto& pp : factorize(s))
            CHECK(pp.exponent == 1);
        if (q <= 2000)
            CHECK(s == least_square_multiplier(q));
    }
}

TEST_CASE("jacobi") {
    CHECK(jacobi(2, 7) == 1);
    CHECK(jacobi(3, 7) == -1);
    CHECK(jacobi(0, 5) == 0);
    CHECK(jacobi(33, 9999) == 0);
    CHECK(jacobi(34, 9999) == -1);
    CHECK(jacobi(35, 9999) == 1);
    CHECK(jacobi(5, 1) == 1);
    CHECK_THROWS_AS(jacobi(3, 8), Error);
    CHECK_THROWS_AS(jacobi(3, -7), Error);

    // Legendre symbol by squaring every residue.
    for (std::uint32_t p : primes_up_to(10000)) {
        if (p == 2)
            continue;
        std::vector<char> square(p, 0);
        for (std::uint64_t z = 1; z < p; ++z)
            square[z * z % p] = 1;
        for (std::uint32_t a = 0; a < p; ++a) {
            int expected = a == 0 ? 0 : (square[a] ? 1 : -1);
            CHECK(jacobi(a, p) == expected);
        }
    }
}

TEST_CASE("is_prime") {
    CHECK(is_prime(13));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
    CHECK(trial_division_prime(1000003));
    CHECK(is_prime(1000003));
    for (long n = 0; n < 20000; ++n)
        CHECK(is_prime(n) == trial_division_prime(n));
    for (long n = 999'000'000'000L; n < 999'000'002'000L; n += 7)
        CHECK(is_prime(n) == trial_division_prime(n));
    // Strong pseudoprime to bases 2, 3, 5, 7.
    CHECK_FALSE(is_prime(Int(3215031751ULL)));
    CHECK_FALSE(is_prime(Int(3825123056546413051ULL)));
    CHECK(is_prime((Int(1) << 61) - 1));
    CHECK(is_prime(Int(18446744073709551557ULL)));
    CHECK_THROWS_AS(is_prime(Int(1) << 64), Error);
}

TEST_CASE("factorize") {
    Int n = Int(1000003) * 1000033 * 4 * 9;
    auto f = factorize(n);
    REQUIRE(f.size() == 4);
    CHECK(f[0].prime == 2);
    CHECK(f[0].exponent == 2);
    CHECK(f[1].prime == 3);
    CHECK(f[3].prime == 1000033);
    Int big = Int(4294967291ULL) * 4294967279ULL;
    auto g = factorize(big);
    REQUIRE(g.size() == 2);
    CHECK(g[0].prime == 4294967279ULL);
    CHECK_THROWS_AS(factorize(Int(2305843009213693951ULL) * 1000000007 * 6), Error);
    Int product = 1;
    Int m = Int(2305843009213693951ULL) * 6;
    for (const auto& [p, e] : factorize(m))
        product *= boost::multiprecision::pow(p, e);
    CHECK(product == m);
}

TEST_CASE("least_qnr") {
    CHECK(least_qnr(5) == 2);
    CHECK(least_qnr(17) == 3);
    CHECK(least_qnr(13) == 2);
    CHECK(least_qnr(3) == 2);
    CHECK_THROWS_AS(least_qnr(15), Error);
    CHECK_THROWS_AS(least_qnr(2), Error);
    for (std::uint32_t p : primes_up_to(1'000'000)) {
        if (p == 2)
            continue;
        Int n = least_qnr(p);
        // n < sqrt(p) + 1  <=>  (n - 1)^2 < p
        CHECK((n - 1) * (n - 1) < p);
    }
}

TEST_CASE("sqrt_mod") {
    CHECK(sqrt_mod(4, 5) == Int(2));
    CHECK(sqrt_mod(2, 7) == Int(3));
    CHECK_FALSE(sqrt_mod(3, 7).has_value());
    CHECK(sqrt_mod(0, 1) == Int(0));
    CHECK_THROWS_AS(sqrt_mod(6, 9), Error);

    SqrtModOptions factor_route;
    factor_route.scan_threshold = 0;
    CHECK(sqrt_mod(4, 5, factor_route) == Int(2));
    CHECK(sqrt_mod(2, 7, factor_route) == Int(3));

    // Both library routes against a test-side scan.
    for (long m = 1; m <= 400; ++m)
        for (long a = 0; a < m; ++a) {
            if (std::gcd(a, m) != 1)
                continue;
            auto expected = scan_sqrt(a, m);
            auto by_scan = sqrt_mod(a, m);
            auto by_factoring = sqrt_mod(a, m, factor_route);
            REQUIRE(by_scan.has_value() == expected.has_value());
            REQUIRE(by_factoring.has_value() == expected.has_value());
            if (expected) {
                CHECK(*by_scan == *expected);
                CHECK(*by_factoring == *expected);
            }
        }

    // Large moduli take the factoring route; every root is self-certified.
    std::mt19937_64 rng(11);
    const Int moduli[] = {Int(1000003) * 1000033, Int(1) << 40, (Int(1) << 61) - 1,
                          Int(999983) * 999983 * 8 * 27, Int(4294967291ULL) * 4294967279ULL};
    for (const Int& m : moduli) {
        int found = 0;
        for (int i = 0; i < 200; ++i) {
            Int c = Int(rng()) % m;
            Int a = mod(c * c, m);
            if (gcd(a, m) != 1)
                continue;
            auto r = sqrt_mod(a, m);
            REQUIRE(r.has_value());
            CHECK(mod(*r * *r - a, m) == 0);
            CHECK(*r <= boost::multiprecision::min(c, Int(m - c)));
            ++found;
        }
        CHECK(found > 0);
    }
}
