#include "sqap/sweep.hpp"

#include "sqap/arith.hpp"
#include "sqap/lowerbound.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <future>
#include <limits>
#include <optional>
#include <thread>

namespace sqap::sweep {

namespace {

using Float = boost::multiprecision::cpp_bin_float_50;

struct Candidate {
    TwoDAP ap;
    Int size;
    std::string detail;
};

void keep_better(std::optional<Candidate>& slot, Candidate c) {
    if (!slot || better(c.ap, c.size, slot->ap, slot->size))
        slot = std::move(c);
}

// Runs task(i) for i in [0, count) on up to `threads` workers. The first
// exception by index is rethrown after all workers finish.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

Candidate one_d_candidate(const Int& q, const Int& T) {
    Int B = Int(std::min(Int(T / q), Int(arith::squarefree_kernel(q) - 1)));
    TwoDAP ap(q, q, Rat(B), Rat(0));
    return {ap, cardinality(ap), "q = " + q.str()};
}

// min(T/q, s(q) - 1) <= min(T/q, q - 1), so once some q reaches B0 only
// q in [B0 + 1, T/B0] can match or beat it.
FamilyBest run_one_d(const Int& T, unsigned threads) {
    Int root = arith::isqrt(T);
    std::optional<Candidate> seed;
    std::uint64_t evaluations = 0;
    for (Int q = Int(std::max(Int(1), Int(root - 64))); q <= root + 64; ++q, ++evaluations)
        keep_better(seed, one_d_candidate(q, T));
    Int floor_B = seed->ap.b1();
    Int lo = floor_B + 1, hi = T / floor_B;

    const std::size_t shards = std::max(1u, threads) * 4;
    Int span = hi - lo + 1;
    std::vector<std::optional<Candidate>> best(shards);
    parallel_for(shards, threads, [&](std::size_t s) {
        Int from = lo + span * s / shards, to = lo + span * (s + 1) / shards;
        for (Int q = from; q < to; ++q)
            keep_better(best[s], one_d_candidate(q, T));
    });
    std::optional<Candidate> merged = seed;
    for (auto& b : best)
        if (b)
            keep_better(merged, std::move(*b));
    evaluations += static_cast<std::uint64_t>(span);
    return {Family::OneD, merged->ap, merged->size, evaluations, merged->detail};
}

std::optional<FamilyBest> run_lower_bound(const Int& T, unsigned threads) {
    Int p_max = arith::isqrt(T / 2);
    if (p_max < 13)
        return std::nullopt;
    if (p_max > Int(std::numeric_limits<std::uint32_t>::max()))
        fail(ErrorCode::TooLarge, "sweep: lower_bound family needs primes beyond the sieve range");
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(p_max)))
        if (p >= 13 && p % 4 == 1)
            primes.push_back(p);

    std::vector<std::optional<Candidate>> found(primes.size());
    parallel_for(primes.size(), threads, [&](std::size_t i) {
        auto inst = lowerbound::build_instance(primes[i]);
        if (!lowerbound::residue_certificate(inst).pass)
            fail(ErrorCode::DomainError, "sweep: residue certificate failed for p = " + inst.p.str());
        found[i] = Candidate{inst.progression(), inst.size,
                             "p = " + inst.p.str() + ", n(p) = " + inst.nqr.str()};
    });
    std::optional<Candidate> merged;
    for (auto& c : found)
        keep_better(merged, std::move(*c));
    return FamilyBest{Family::LowerBound, merged->ap, merged->size, primes.size(), merged->detail};
}

struct ChainState {
    Int q1, q2, b1, b2;
};

bool feasible(const TwoDAP& ap, const Int& T) {
    return ap.value_bound() <= T && is_proper(ap) &&
           certify_square_free(ap, T).kind == Certificate::Kind::SquareFree;
}

Candidate run_chain(const Int& T, std::uint64_t seed, std::uint32_t chain, std::uint64_t budget) {
    auto rng = chain_generator(seed, chain);
    const std::uint64_t span = static_cast<std::uint64_t>(2 * arith::isqrt(T)) - 1;
    auto restart = [&] {
        Int a = 2 + uniform_below(rng, span), b = 2 + uniform_below(rng, span);
        if (a > b)
            std::swap(a, b);
        return ChainState{a, b, 0, 0};
    };
    auto as_candidate = [&](const ChainState& s) {
        TwoDAP ap(s.q1, s.q2, Rat(s.b1), Rat(s.b2));
        return Candidate{ap, cardinality(ap), "chain = " + std::to_string(chain)};
    };
    auto grow = [&](const Int& b) -> Int {
        return b + 1 + uniform_below(rng, static_cast<std::uint64_t>(b / 2) + 1);
    };
    auto shift = [&](const Int& q) -> Int {
        Int step = 1 + uniform_below(rng, 8);
        return uniform_below(rng, 2) ? Int(q + step) : Int(std::max(Int(1), Int(q - step)));
    };

    ChainState cur = restart();
    std::optional<Candidate> best;
    keep_better(best, as_candidate(cur));
    int stall = 0;
    for (std::uint64_t used = 0; used < budget; ++used) {
        ChainState next = cur;
        switch (uniform_below(rng, 4)) {
        case 0: next.b1 = grow(cur.b1); break;
        case 1: next.b2 = grow(cur.b2); break;
        case 2: next.q1 = shift(cur.q1); break;
        default: next.q2 = shift(cur.q2); break;
        }
        if (next.q1 > next.q2) {
            std::swap(next.q1, next.q2);
            std::swap(next.b1, next.b2);
        }
        Candidate c = as_candidate(next);
        if (c.size >= (2 * cur.b1 + 1) * (2 * cur.b2 + 1) && feasible(c.ap, T)) {
            stall = c.size > (2 * cur.b1 + 1) * (2 * cur.b2 + 1) ? 0 : stall + 1;
            cur = next;
            keep_better(best, std::move(c));
        } else {
            ++stall;
        }
        if (stall >= 64) {
            cur = restart();
            stall = 0;
        }
    }
    return std::move(*best);
}

FamilyBest run_random_local(const Int& T, std::uint64_t seed, std::uint64_t budget, unsigned threads) {
    std::vector<std::optional<Candidate>> found(kRandomChains);
    parallel_for(kRandomChains, threads, [&](std::size_t c) {
        std::uint64_t share = budget / kRandomChains + (c < budget % kRandomChains ? 1 : 0);
        found[c] = run_chain(T, seed, static_cast<std::uint32_t>(c), share);
    });
    std::optional<Candidate> merged;
    for (auto& c : found)
        keep_better(merged, std::move(*c));
    return {Family::RandomLocal, merged->ap, merged->size, budget, merged->detail};
}

void verify_emission(const FamilyBest& fb, const Int& T) {
    const TwoDAP& ap = fb.best;
    std::string who = std::string(to_string(fb.family)) + " best (" + fb.detail + ")";
    if (ap.value_bound() > T)
        fail(ErrorCode::DomainError, who + " leaves [-T, T]");
    if (!is_proper(ap))
        fail(ErrorCode::DomainError, who + " is not proper");
    if (certify_square_free(ap, T).kind != Certificate::Kind::SquareFree)
        fail(ErrorCode::DomainError, who + " contains a square");
    if (cardinality(ap) != fb.size)
        fail(ErrorCode::DomainError, who + " reports the wrong size");
}

std::string render(const Float& v) {
    return v.str(10, std::ios_base::fixed);
}

} // namespace

std::string_view to_string(Family f) {
    switch (f) {
    case Family::OneD: return "one_d";
    case Family::LowerBound: return "lower_bound";
    case Family::RandomLocal: return "random_local";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::OneD, Family::LowerBound, Family::RandomLocal})
        if (to_string(f) == name)
            return f;
    fail(ErrorCode::DomainError, "unknown family '" + std::string(name) + "'");
}

bool better(const TwoDAP& a, const Int& size_a, const TwoDAP& b, const Int& size_b) {
    if (size_a != size_b)
        return size_a > size_b;
    auto key = [](const TwoDAP& x) { return std::tie(x.q1(), x.q2(), x.b1(), x.b2()); };
    return key(a) < key(b);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t range) {
    if (range == 0)
        fail(ErrorCode::DomainError, "uniform_below: empty range");
    // 2^64 mod range, computed without overflow.
    const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;
    for (;;) {
        std::uint64_t word = rng();
        if (excess == 0 || word <= limit)
            return word % range;
    }
}

std::mt19937_64 chain_generator(std::uint64_t seed, std::uint32_t chain) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), chain};
    return std::mt19937_64(seq);
}

std::string ratio_to_T_20_27(const Int& size, const Int& T) {
    Float t(T);
    return render(Float(size) / boost::multiprecision::pow(t, Float(20) / 27));
}

std::string ratio_to_sqrtT_logT(const Int& size, const Int& T) {
    Float t(T);
    return render(Float(size) / (boost::multiprecision::sqrt(t) * boost::multiprecision::log(t)));
}

SweepResult run_sweep(const SweepConfig& config) {
    const Int& T = config.T;
    if (T < 100)
        fail(ErrorCode::DomainError, "sweep: T must be >= 100");
    if (config.budget < 1)
        fail(ErrorCode::DomainError, "sweep: budget must be >= 1");
    if (config.families.empty())
        fail(ErrorCode::DomainError, "sweep: no families selected");

    std::vector<Family> families = config.families;
    std::sort(families.begin(), families.end());
    families.erase(std::unique(families.begin(), families.end()), families.end());

    std::vector<std::future<std::optional<FamilyBest>>> running;
    for (Family f : families)
        running.push_back(std::async(std::launch::async, [&, f]() -> std::optional<FamilyBest> {
            switch (f) {
            case Family::OneD: return run_one_d(T, config.threads);
            case Family::LowerBound: return run_lower_bound(T, config.threads);
            case Family::RandomLocal: return run_random_local(T, config.seed, config.budget, config.threads);
            }
            return std::nullopt;
        }));

    std::vector<FamilyBest> per_family;
    std::exception_ptr error;
    for (auto& r : running) {
        try {
            if (auto fb = r.get())
                per_family.push_back(std::move(*fb));
        } catch (...) {
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    if (per_family.empty())
        fail(ErrorCode::NotFound, "sweep: no family produced a candidate for T = " + T.str());

    std::size_t top = 0;
    for (std::size_t i = 0; i < per_family.size(); ++i) {
        verify_emission(per_family[i], T);
        if (better(per_family[i].best, per_family[i].size, per_family[top].best, per_family[top].size))
            top = i;
    }
    SweepResult result{per_family[top], per_family, "", ""};
    result.ratio_to_T_20_27 = ratio_to_T_20_27(result.best.size, T);
    result.ratio_to_sqrtT_logT = ratio_to_sqrtT_logT(result.best.size, T);
    return result;
}

} // namespace sqap::sweep
