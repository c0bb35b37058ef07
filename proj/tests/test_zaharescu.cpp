#include "doctest.h"

#include "sqap/arith.hpp"
#include "sqap/zaharescu.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <random>

using namespace sqap;
using namespace sqap::zaharescu;

namespace {

// H(k) straight from the definition: the smallest h such that each unit x
// has some |y| <= h and z with x ≡ y z^2 (mod k).
long radius_by_definition(long k) {
    for (long h = 1;; ++h) {
        bool all = true;
        for (long x = 0; x < k && all; ++x) {
            if (std::gcd(x, k) != 1)
                continue;
            bool found = false;
            for (long y = -h; y <= h && !found; ++y)
                for (long z = 0; z < k && !found; ++z)
                    found = (((y * z * z - x) % k) + k) % k == 0;
            all = found;
        }
        if (all)
            return h;
    }
}

Int balanced_N(const Int& q1, const Int& q2) {
    using boost::multiprecision::pow;
    return arith::iroot_ceil(pow(q1, 9) * pow(q2, 4), 16);
}

} // namespace

TEST_CASE("square_class_radius") {
    CHECK(square_class_radius(1) == 1);
    CHECK(square_class_radius(2) == 1);
    CHECK(square_class_radius(5) == 2);
    CHECK(square_class_radius(7) == 1);
    for (long k = 1; k <= 60; ++k)
        CHECK(square_class_radius(k) == radius_by_definition(k));
    CHECK_THROWS_AS(square_class_radius(0), Error);
    CHECK_THROWS_AS(square_class_radius(200000), Error);
}

TEST_CASE("square_class_radius grows slowly") {
    double worst = 0;
    long worst_k = 0;
    for (long k = 1; k <= 2000; ++k) {
        double h = square_class_radius(k).convert_to<double>();
        double ratio = h / (std::pow(k, 0.25) * std::log(k + 2.0));
        if (ratio > worst) {
            worst = ratio;
            worst_k = k;
        }
    }
    MESSAGE("max H(k) / (k^(1/4) log(k+2)) over k <= 2000: " << worst << " at k = " << worst_k);
    CHECK(worst <= 64);
}

TEST_CASE("Dirichlet step") {
    auto p = dirichlet_by_convergents(3, 5, 3);
    CHECK(p.n == 2);
    CHECK(p.m == -1);
    CHECK(p.approx_d == 1);
    CHECK(dirichlet_by_scan(3, 5, 3).n == 2);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 3000; ++i) {
        Int modulus = 1 + rng() % 3000;
        Int numerator = rng() % 10000;
        Int N = 1 + rng() % 400;
        auto fast = dirichlet_by_convergents(numerator, modulus, N);
        auto slow = dirichlet_by_scan(numerator, modulus, N);
        // dist(n a / q, Z) <= 1/N exactly
        CHECK(boost::multiprecision::abs(fast.approx_d) * N <= modulus);
        CHECK(fast.n >= 1);
        CHECK(fast.n <= N);
        CHECK(fast.n == slow.n);
        CHECK(boost::multiprecision::abs(fast.approx_d) == boost::multiprecision::abs(slow.approx_d));
    }
    CHECK_THROWS_AS(dirichlet_by_scan(1, 7, 20000), Error);
}

TEST_CASE("construct_small_square worked example") {
    auto t = construct_small_square(5, 7, 3);
    CHECK(t.b == 2);
    CHECK(t.c == 2);
    CHECK(t.c_bar == 3);
    CHECK(t.n == 2);
    CHECK(t.m == -1);
    CHECK(t.approx_d == 1);
    CHECK(t.witness == SquareWitness{-2, 2, 2});
    // n = 3 is also within 1/N of an integer and gives the representation -5 + 14 = 9.
    CHECK(-1 * 5 + 2 * 7 == 9);
    CHECK(boost::multiprecision::abs(Int(3 * 3 - 2 * 5)) * 3 <= 5);
}

TEST_CASE("construct_small_square edge cases") {
    auto unit = construct_small_square(1, 12345, 1);
    CHECK(unit.witness == SquareWitness{1, 0, 1});
    CHECK_THROWS_AS(construct_small_square(6, 10, 5), Error);
    CHECK_THROWS_AS(construct_small_square(5, 7, 0), Error);
    try {
        construct_small_square(6, 10, 5);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotCoprime);
    }
    // Tampering is caught.
    auto t = construct_small_square(11, 13, 5);
    t.witness.x1 += 1;
    CHECK_THROWS_AS(check_trace(11, 13, 5, t), Error);
}

TEST_CASE("construct_small_square sweep is self-certifying") {
    std::mt19937_64 rng(99);
    int checked = 0;
    while (checked < 3000) {
        Int q1 = 1 + rng() % 1000;
        Int q2 = 1 + rng() % 1000;
        if (arith::gcd(q1, q2) != 1)
            continue;
        Int N = balanced_N(q1, q2);
        auto t = construct_small_square(q1, q2, N);
        const auto& w = t.witness;
        CHECK(w.x1 * q1 + w.x2 * q2 == w.n * w.n);
        CHECK(w.n >= 1);
        CHECK(w.n <= N);
        if (q1 <= 2000)
            CHECK(boost::multiprecision::abs(t.b) <= square_class_radius(q1));
        ++checked;
    }
}

TEST_CASE("bound ratios stay below the ceiling") {
    std::mt19937_64 rng(123);
    double worst_x1 = 0, worst_x2 = 0;
    int checked = 0;
    while (checked < 1500) {
        Int q1 = 1 + rng() % 10000;
        Int q2 = 1 + rng() % 10000;
        if (q1 > q2)
            std::swap(q1, q2);
        if (arith::gcd(q1, q2) != 1)
            continue;
        for (const Int& N : {arith::iroot_ceil(q1, 2), q1, balanced_N(q1, q2)}) {
            auto t = construct_small_square(q1, q2, N);
            CHECK(x2_ratio_within(q1, N, t.witness, 64));
            CHECK(x1_ratio_within(q1, q2, N, t.witness, 64));
            worst_x1 = std::max(worst_x1, x1_ratio(q1, q2, N, t.witness));
            worst_x2 = std::max(worst_x2, x2_ratio(q1, N, t.witness));
        }
        ++checked;
    }
    MESSAGE("max x1 ratio " << worst_x1 << ", max x2 ratio " << worst_x2);
}

TEST_CASE("exact ratio tests agree with the floating renderings") {
    SquareWitness w{10, 3, 4};
    // |x2| N^2 / q1^(9/4) with q1 = 16: 3 * 25 / 512
    CHECK(x2_ratio_within(16, 5, w, Rat(75, 512)));
    CHECK_FALSE(x2_ratio_within(16, 5, w, Rat(74, 512)));
    CHECK(x2_ratio(16, 5, w) == doctest::Approx(75.0 / 512));
    // |x1| / (N^2/q1 + q1^(5/4) q2/N^2) with q1 = 16, q2 = 5, N = 4: 10 / (1 + 32*5/16) = 10/11
    CHECK(x1_ratio_within(16, 5, 4, w, Rat(10, 11)));
    CHECK_FALSE(x1_ratio_within(16, 5, 4, w, Rat(9, 11)));
}

TEST_CASE("minimal_representation") {
    auto w = minimal_representation(3, 5, 5);
    CHECK(w.x1 * 3 + w.x2 * 5 == w.n * w.n);
    CHECK(w.n <= 5);
    // Exhaustive: nothing with a smaller max coordinate.
    Int best = std::max(boost::multiprecision::abs(w.x1), boost::multiprecision::abs(w.x2));
    for (long n = 1; n <= 5; ++n)
        for (long x1 = -25; x1 <= 25; ++x1)
            for (long x2 = -25; x2 <= 25; ++x2)
                if (x1 * 3 + x2 * 5 == n * n)
                    CHECK(std::max(std::abs(x1), std::abs(x2)) >= best);

    CHECK(minimal_representation(1, 9, 4) == SquareWitness{1, 0, 1});
    CHECK(minimal_representation(1, 2, 4) == SquareWitness{1, 0, 1});

    auto oracle = minimal_representation(5, 7, 3);
    auto built = construct_small_square(5, 7, 3).witness;
    CHECK(std::max(abs(oracle.x1), abs(oracle.x2)) <= std::max(abs(built.x1), abs(built.x2)));

    CHECK_THROWS_AS(minimal_representation(7, 5, 3), Error);
    CHECK_THROWS_AS(minimal_representation(6, 9, 3), Error);
}

TEST_CASE("constructed witnesses lie in the exhaustive search box") {
    for (long q2 = 2; q2 <= 60; ++q2)
        for (long q1 = 1; q1 <= q2; ++q1) {
            if (std::gcd(q1, q2) != 1)
                continue;
            // N = q2^(3/4) is the choice that forces a witness into a box of side ~ q2^(1/2).
            for (const Int& N : {arith::iroot_ceil(boost::multiprecision::pow(Int(q2), 3), 4), Int(q2)}) {
                auto built = construct_small_square(q1, q2, N).witness;
                Int box = Int(q2) * q2;
                CHECK(abs(built.x1) <= box);
                CHECK(abs(built.x2) <= box);
                auto oracle = minimal_representation(q1, q2, N);
                CHECK(std::max(abs(oracle.x1), abs(oracle.x2)) <= std::max(abs(built.x1), abs(built.x2)));
            }
        }
}
