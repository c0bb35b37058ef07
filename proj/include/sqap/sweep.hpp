#pragma once

#include "sqap/progression.hpp"
#include "sqap/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sqap::sweep {

enum class Family { OneD, LowerBound, RandomLocal };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

struct SweepConfig {
    Int T;
    // Evaluated in enum order regardless of how they were listed.
    std::vector<Family> families{Family::OneD, Family::LowerBound, Family::RandomLocal};
    // Candidate evaluations for the random_local family.
    std::uint64_t budget = 4096;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct FamilyBest {
    Family family;
    TwoDAP best;
    Int size;
    std::uint64_t evaluations = 0;
    // e.g. "q = 997" or "p = 13"
    std::string detail;
};

struct SweepResult {
    FamilyBest best;
    std::vector<FamilyBest> per_family;
    std::string ratio_to_T_20_27;
    std::string ratio_to_sqrtT_logT;
};

/// Runs every requested family, re-verifies each family's best (square-free
/// within [-T, T], proper, contained in [-T, T]) and merges: larger size
/// first, then lexicographically smaller (q1, q2, B1, B2).
/// DomainError unless T >= 100 and budget >= 1.
SweepResult run_sweep(const SweepConfig& config);

// Decimal renderings (10 fractional digits) of size / T^(20/27) and size / (sqrt(T) log T).
std::string ratio_to_T_20_27(const Int& size, const Int& T);
std::string ratio_to_sqrtT_logT(const Int& size, const Int& T);

// True when a should be preferred over b.
bool better(const TwoDAP& a, const Int& size_a, const TwoDAP& b, const Int& size_b);

/// Portable uniform draw in [0, range): 64-bit words from mt19937_64,
/// rejecting those at or above the largest multiple of range.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t range);

// Generator for chain `chain` of a run seeded with `seed`: mt19937_64 seeded
// through std::seed_seq{seed low 32 bits, seed high 32 bits, chain}.
std::mt19937_64 chain_generator(std::uint64_t seed, std::uint32_t chain);

inline constexpr std::uint32_t kRandomChains = 8;

} // namespace sqap::sweep
