#pragma once

#include "sqap/progression.hpp"
#include "sqap/types.hpp"

#include <string>
#include <vector>

namespace sqap::lowerbound {

struct NonResidueRecord {
    Int p;
    Int nqr;
    // n(p) / log p, display only.
    double ratio_log;
};

/// A_{p,q}(p - 1, n(p) - 1) inside [-2p^2, 2p^2], with q the least element of
/// [p, 2p) that is a non-residue mod p.
struct LowerBoundInstance {
    Int p, q, nqr;
    Int x1_bound, x2_bound;
    Int T;
    Int size;

    TwoDAP progression() const;
};

// BadPrime unless p is a prime, p ≡ 1 (mod 4) and p >= 13.
LowerBoundInstance build_instance(const Int& p);

struct CertificateStep {
    std::string name;
    bool ok;
    std::string detail;
};

struct ResidueCertificate {
    bool pass;
    std::vector<CertificateStep> steps;
};

/// Rechecks the square-avoidance argument step by step:
///   q_nonresidue     (q|p) = -1
///   small_residues   (x|p) = +1 for 1 <= x <= X2, and (-1|p) = +1
///   divisible_branch p does not divide q, X1 < p and X2 < p
///   distinct         2 X2 < p, X2^2 < p, and the box fits in [-T, T]
ResidueCertificate residue_certificate(const LowerBoundInstance& inst);

struct ScanSummary {
    std::size_t primes = 0;
    Int max_nqr = 0;
    Int argmax_p = 0;
    double max_ratio_log = 0;
    Int argmax_ratio_p = 0;
    // p where n(p) exceeds n(p') for every smaller scanned p'.
    std::vector<NonResidueRecord> running_records;
    // n(p) < sqrt(p) + 1 for every scanned p.
    bool below_sqrt_bound = true;
    // max n(p) p^{-1/(4 sqrt e)}, informational.
    double max_burgess_ratio = 0;
};

struct ScanResult {
    std::vector<NonResidueRecord> records;
    ScanSummary summary;
};

// Primes p ≡ 1 (mod 4) with from <= p <= to.
ScanResult salie_scan(const Int& to, const Int& from = 0);

// size / (isqrt(T) n(p)).
Rat size_vs_T(const LowerBoundInstance& inst);

} // namespace sqap::lowerbound
