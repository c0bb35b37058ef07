#include "doctest.h"

#include "sqap/arith.hpp"
#include "sqap/lowerbound.hpp"

using namespace sqap;
using namespace sqap::lowerbound;

namespace {

// Legendre symbol by listing the squares mod p.
bool is_square_mod(long a, long p) {
    a %= p;
    for (long x = 0; x < p; ++x)
        if (x * x % p == a)
            return true;
    return false;
}

long scan_nqr(long p) {
    for (long n = 2;; ++n)
        if (!is_square_mod(n, p))
            return n;
}

bool trial_prime(long n) {
    if (n < 2)
        return false;
    for (long k = 2; k * k <= n; ++k)
        if (n % k == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("build_instance examples") {
    auto i13 = build_instance(13);
    CHECK(i13.q == 15);
    CHECK(i13.nqr == 2);
    CHECK(i13.x1_bound == 12);
    CHECK(i13.x2_bound == 1);
    CHECK(i13.T == 338);
    CHECK(i13.size == 75);

    auto i17 = build_instance(17);
    CHECK(i17.q == 20);
    CHECK(i17.nqr == 3);
    CHECK(i17.size == 165);

    CHECK_THROWS_AS(build_instance(11), Error);
    CHECK_THROWS_AS(build_instance(5), Error);
    CHECK_THROWS_AS(build_instance(21), Error);
    CHECK_THROWS_AS(build_instance(25), Error);
    try {
        build_instance(11);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BadPrime);
    }
}

TEST_CASE("residue_certificate on p = 13") {
    auto inst = build_instance(13);
    auto cert = residue_certificate(inst);
    CHECK(cert.pass);
    CHECK(cert.steps.size() == 4);
    CHECK_FALSE(brute_force_witness(inst.progression()).has_value());

    auto tampered = inst;
    tampered.x2_bound = inst.nqr;
    auto bad = residue_certificate(tampered);
    CHECK_FALSE(bad.pass);
    CHECK(bad.steps[1].name == "small_residues");
    CHECK_FALSE(bad.steps[1].ok);

    auto wrong_q = inst;
    wrong_q.q = 14;
    CHECK_FALSE(residue_certificate(wrong_q).steps[0].ok);
}

TEST_CASE("lower-bound family up to 2000") {
    int built = 0;
    for (long p = 13; p <= 2000; ++p) {
        if (p % 4 != 1 || !trial_prime(p))
            continue;
        auto inst = build_instance(p);
        // Smallest q in [p, 2p) that is a non-residue, by listing squares.
        long q = p;
        while (is_square_mod(q, p))
            ++q;
        CHECK(inst.q == q);
        CHECK(q < 2 * p);
        CHECK(inst.nqr == scan_nqr(p));

        auto cert = residue_certificate(inst);
        CHECK(cert.pass);
        TwoDAP ap = inst.progression();
        CHECK_FALSE(brute_force_witness(ap).has_value());
        CHECK(is_proper(ap));
        CHECK(ap.value_bound() <= inst.T);
        CHECK(size_vs_T(inst) >= 1);
        ++built;
    }
    CHECK(built == 146);
}

TEST_CASE("size_vs_T examples") {
    CHECK(size_vs_T(build_instance(13)) == Rat(75, 36));
    CHECK(size_vs_T(build_instance(17)) == Rat(165, 72));
}

TEST_CASE("salie_scan") {
    CHECK(salie_scan(12).records.empty());

    auto r = salie_scan(100);
    std::vector<std::pair<int, int>> expected{{13, 2}, {17, 3}, {29, 2}, {37, 2}, {41, 3},
                                              {53, 2}, {61, 2}, {73, 5}, {89, 3}, {97, 5}};
    REQUIRE(r.records.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(r.records[i].p == expected[i].first);
        CHECK(r.records[i].nqr == expected[i].second);
    }
    CHECK(r.summary.max_nqr == 5);
    CHECK(r.summary.argmax_p == 73);
    REQUIRE(r.summary.running_records.size() == 3);
    CHECK(r.summary.running_records[0].p == 13);
    CHECK(r.summary.running_records[1].p == 17);
    CHECK(r.summary.running_records[2].p == 73);
    CHECK(r.summary.below_sqrt_bound);

    auto ranged = salie_scan(100, 50);
    CHECK(ranged.records.front().p == 53);
    CHECK(ranged.records.size() == 5);

    auto big = salie_scan(200000);
    CHECK(big.summary.below_sqrt_bound);
    for (const auto& rec : big.records) {
        if (rec.p > 5000)
            break;
        CHECK(rec.nqr == scan_nqr(static_cast<long>(rec.p)));
    }
    MESSAGE("max n(p)/log p up to 2e5: " << big.summary.max_ratio_log << " at p = " << big.summary.argmax_ratio_p);
}
