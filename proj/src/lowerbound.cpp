#include "sqap/lowerbound.hpp"

#include "sqap/arith.hpp"

#include <cmath>
#include <limits>

namespace sqap::lowerbound {

namespace {

Int least_non_residue(const Int& p) {
    for (Int n = 2;; ++n)
        if (arith::jacobi(n, p) == -1)
            return n;
}

double ratio_to_log(const Int& n, const Int& p) {
    return static_cast<double>(n) / std::log(static_cast<double>(p));
}

} // namespace

TwoDAP LowerBoundInstance::progression() const {
    return TwoDAP(p, q, Rat(x1_bound), Rat(x2_bound));
}

LowerBoundInstance build_instance(const Int& p) {
    if (p < 13 || arith::mod(p, 4) != 1 || !arith::is_prime(p))
        fail(ErrorCode::BadPrime, "build_instance: need a prime p ≡ 1 (mod 4) with p >= 13, got " + p.str());

    LowerBoundInstance inst;
    inst.p = p;
    inst.q = p;
    while (arith::jacobi(inst.q, p) != -1)
        ++inst.q;
    inst.nqr = least_non_residue(p);
    inst.x1_bound = p - 1;
    inst.x2_bound = inst.nqr - 1;
    inst.T = 2 * p * p;
    inst.size = (2 * inst.x1_bound + 1) * (2 * inst.x2_bound + 1);
    return inst;
}

ResidueCertificate residue_certificate(const LowerBoundInstance& inst) {
    ResidueCertificate cert{true, {}};
    auto record = [&](std::string name, bool ok, std::string detail) {
        cert.steps.push_back({std::move(name), ok, std::move(detail)});
        cert.pass = cert.pass && ok;
    };
    const Int& p = inst.p;
    const Int& q = inst.q;

    if (p < 3 || !arith::is_prime(p) || arith::mod(p, 4) != 1) {
        record("q_nonresidue", false, "p is not a prime ≡ 1 (mod 4)");
        return cert;
    }

    int qp = arith::jacobi(q, p);
    record("q_nonresidue", qp == -1, "(q|p) = " + std::to_string(qp));

    bool residues = arith::jacobi(p - 1, p) == 1;
    std::string detail = residues ? "" : "(-1|p) != 1";
    for (Int x = 1; residues && x <= inst.x2_bound; ++x)
        if (arith::jacobi(x, p) != 1) {
            residues = false;
            detail = "(" + x.str() + "|p) = " + std::to_string(arith::jacobi(x, p));
        }
    record("small_residues", residues, detail);

    bool divisible = q % p != 0 && inst.x1_bound < p && inst.x2_bound < p;
    record("divisible_branch", divisible, divisible ? "" : "p | q or a radius reaches p");

    TwoDAP ap = inst.progression();
    bool distinct = 2 * inst.x2_bound < p && inst.x2_bound * inst.x2_bound < p && ap.value_bound() <= inst.T;
    record("distinct", distinct, "value bound " + ap.value_bound().str() + ", T " + inst.T.str());
    return cert;
}

ScanResult salie_scan(const Int& to, const Int& from) {
    ScanResult out;
    if (to < 13)
        return out;
    if (to > Int(std::numeric_limits<std::uint32_t>::max()) - 1)
        fail(ErrorCode::TooLarge, "salie_scan: upper bound exceeds the sieve range");

    const double burgess = 1.0 / (4.0 * std::sqrt(std::exp(1.0)));
    Int best_so_far = 0;
    auto& s = out.summary;
    for (std::uint32_t prime : arith::primes_up_to(static_cast<std::uint32_t>(to))) {
        Int p = prime;
        if (prime % 4 != 1 || p < 13 || p < from)
            continue;
        Int n = least_non_residue(p);
        NonResidueRecord rec{p, n, ratio_to_log(n, p)};
        out.records.push_back(rec);

        ++s.primes;
        if (n > s.max_nqr) {
            s.max_nqr = n;
            s.argmax_p = p;
        }
        if (rec.ratio_log > s.max_ratio_log) {
            s.max_ratio_log = rec.ratio_log;
            s.argmax_ratio_p = p;
        }
        if (n > best_so_far) {
            best_so_far = n;
            s.running_records.push_back(rec);
        }
        // n < sqrt(p) + 1 iff (n - 1)^2 < p.
        if ((n - 1) * (n - 1) >= p)
            s.below_sqrt_bound = false;
        s.max_burgess_ratio =
            std::max(s.max_burgess_ratio, static_cast<double>(n) * std::pow(static_cast<double>(prime), -burgess));
    }
    return out;
}

Rat size_vs_T(const LowerBoundInstance& inst) {
    return Rat(inst.size, arith::isqrt(inst.T) * inst.nqr);
}

} // namespace sqap::lowerbound
