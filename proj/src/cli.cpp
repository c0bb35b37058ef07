#include "sqap/cli.hpp"

#include "sqap/arith.hpp"
#include "sqap/bounds.hpp"
#include "sqap/io.hpp"
#include "sqap/lattice.hpp"
#include "sqap/lowerbound.hpp"
#include "sqap/progression.hpp"
#include "sqap/sweep.hpp"
#include "sqap/zaharescu.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace sqap::cli {

namespace {

using io::Record;

struct Globals {
    std::string output;
    std::string format;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::uint64_t guard = kDefaultEnumerationGuard;
};

struct InstanceArgs {
    std::string q1, q2, x1, x2, t;

    void attach(CLI::App* cmd) {
        cmd->add_option("--q1", q1, "first step (decimal integer)")->required();
        cmd->add_option("--q2", q2, "second step (decimal integer)")->required();
        cmd->add_option("--x1", x1, "first radius (integer, p/q or decimal)")->required();
        cmd->add_option("--x2", x2, "second radius (integer, p/q or decimal)")->required();
        cmd->add_option("--t", t, "ambient bound T (decimal integer)")->required();
    }

    TwoDAP progression() const { return TwoDAP(parse_int(q1), parse_int(q2), parse_rat(x1), parse_rat(x2)); }
    Int T() const { return parse_int(t); }
};

// Frozen CSV columns per command; the schema document lists the same names.
const std::vector<std::string> kWitnessColumns{
    "schema_version", "record", "instance.q1", "instance.q2", "instance.x1_bound", "instance.x2_bound",
    "T", "method", "found", "witness.x1", "witness.x2", "witness.n"};
const std::vector<std::string> kVerifyColumns{
    "schema_version", "record", "instance.q1", "instance.q2", "instance.x1_bound", "instance.x2_bound",
    "T", "kind", "witness.x1", "witness.x2", "witness.n", "max_n_checked", "proper", "cardinality",
    "value_bound", "inside"};
const std::vector<std::string> kConstructColumns{
    "schema_version", "record", "q1", "q2", "N", "trace.b", "trace.c", "trace.c_bar", "trace.n", "trace.m",
    "trace.approx_d", "trace.witness.x1", "trace.witness.x2", "trace.witness.n", "x2_ratio", "x1_ratio",
    "minimal.x1", "minimal.x2", "minimal.n"};
const std::vector<std::string> kReduceColumns{
    "schema_version", "record", "index", "kind", "input.q1", "input.q2", "input.x1_bound", "input.x2_bound",
    "T", "d", "lattice.swapped", "lattice.qt1", "lattice.qt2", "lattice.U", "lattice.lambda1_sq",
    "lattice.lambda2_sq", "lattice.u", "lattice.v", "lattice.p1", "lattice.p2", "lattice.xt1_floor",
    "lattice.xt2_floor", "derived.q1", "derived.q2", "derived.x1_bound", "derived.x2_bound", "derived_T",
    "image1", "image2", "verdict", "verdict_detail", "steps", "terminal", "final.q1", "final.q2",
    "final.x1_bound", "final.x2_bound", "final_T", "proper", "dichotomy"};
const std::vector<std::string> kLowerColumns{
    "schema_version", "record", "p", "q", "nqr", "x1_bound", "x2_bound", "T", "size", "certificate.pass",
    "certificate.steps", "brute_force", "proper", "size_ratio", "size_ratio_fixed", "count", "all_pass",
    "best_p", "best_size"};
const std::vector<std::string> kScanColumns{
    "schema_version", "record", "p", "nqr", "ratio_log", "primes", "max_nqr", "argmax_p", "max_ratio_log",
    "argmax_ratio_p", "running_records", "below_sqrt_bound", "max_burgess_ratio"};
const std::vector<std::string> kExponentColumns{
    "schema_version", "record", "a", "b", "label", "exponent", "case_one_label", "case_one",
    "case_two_label", "case_two", "grid", "branch", "b_max", "supremum", "attained_count", "attained_at"};
const std::vector<std::string> kSweepColumns{
    "schema_version", "record", "family", "instance.q1", "instance.q2", "instance.x1_bound",
    "instance.x2_bound", "size", "T", "evaluations", "detail", "ratio_to_T_20_27", "ratio_to_sqrtT_logT",
    "seed", "budget"};

class Session {
public:
    Session(const Globals& g, std::ostream& out, std::ostream& err, std::string_view default_format,
            const std::vector<std::string>& columns)
        : globals_(g), err_(err) {
        std::ostream* sink = &out;
        if (!g.output.empty()) {
            file_.open(g.output, std::ios::out | std::ios::trunc);
            if (!file_)
                fail(ErrorCode::DomainError, "cannot open output file '" + g.output + "'");
            sink = &file_;
        }
        auto format = io::parse_format(g.format.empty() ? default_format : std::string_view(g.format));
        writer_.emplace(*sink, format, columns);
    }

    void emit(const Record& r) { writer_->write(r); }
    std::ostream& log() { return err_; }
    const Globals& globals() const { return globals_; }

private:
    const Globals& globals_;
    std::ostream& err_;
    std::ofstream file_;
    std::optional<io::RecordWriter> writer_;
};

Record instance_fields(std::string_view kind, const TwoDAP& ap, const Int& T) {
    Record r = io::make_record(kind);
    r["instance"] = io::to_json(ap);
    r["T"] = to_decimal(T);
    return r;
}

std::optional<SquareWitness> within_T(std::optional<SquareWitness> w, const Int& T) {
    if (w && w->n * w->n > T)
        return std::nullopt;
    return w;
}

int cmd_witness(Session& s, const InstanceArgs& a, const std::string& method) {
    TwoDAP ap = a.progression();
    Int T = a.T();
    std::optional<SquareWitness> w;
    if (method == "fast") {
        w = find_square_witness(ap, T);
    } else if (method == "brute") {
        // The first witness has the least n, so dropping it when n^2 > T loses nothing.
        w = within_T(brute_force_witness(ap, s.globals().guard), T);
    } else if (method == "both") {
        w = find_square_witness(ap, T);
        if (w != within_T(brute_force_witness(ap, s.globals().guard), T))
            fail(ErrorCode::DomainError, "witness: congruence search and brute force disagree");
    } else {
        fail(ErrorCode::DomainError, "witness: unknown method '" + method + "'");
    }
    Record r = instance_fields("witness", ap, T);
    r["method"] = method;
    r["found"] = w.has_value();
    r["witness"] = w ? io::to_json(*w) : Record(nullptr);
    s.emit(r);
    if (w)
        s.log() << "square " << w->n << "^2 = " << w->x1 << "*" << ap.q1() << " + " << w->x2 << "*" << ap.q2()
                << "\n";
    else
        s.log() << "no square n^2 <= min(T, max |value|) in the progression\n";
    return w ? kWitness : kSuccess;
}

int cmd_verify(Session& s, const InstanceArgs& a) {
    TwoDAP ap = a.progression();
    Int T = a.T();
    Certificate cert = certify_square_free(ap, T);
    bool proper = is_proper(ap);
    bool square_free = cert.kind == Certificate::Kind::SquareFree;

    Record r = instance_fields("verify", ap, T);
    r["kind"] = square_free ? "SquareFree" : "Witness";
    r["witness"] = cert.witness ? io::to_json(*cert.witness) : Record(nullptr);
    r["max_n_checked"] = to_decimal(cert.max_n_checked);
    r["proper"] = proper;
    r["cardinality"] = to_decimal(cardinality(ap));
    r["value_bound"] = to_decimal(ap.value_bound());
    r["inside"] = ap.value_bound() <= T;
    s.emit(r);

    if (square_free)
        s.log() << "square-free: " << cardinality(ap) << " points" << (proper ? ", proper" : ", not proper")
                << ", squares checked up to " << cert.max_n_checked << "^2\n";
    else
        s.log() << "not square-free: (" << cert.witness->x1 << ", " << cert.witness->x2 << ") gives "
                << cert.witness->n << "^2\n";
    return square_free ? kSuccess : kWitness;
}

int cmd_construct(Session& s, const std::string& q1s, const std::string& q2s, const std::string& ns,
                  bool minimal) {
    Int q1 = parse_int(q1s), q2 = parse_int(q2s);
    if (q1 < 1 || q2 < 1)
        fail(ErrorCode::DomainError, "construct: steps must be >= 1");
    Int N = ns.empty() ? bounds::balanced_N(Int(std::min(q1, q2)), Int(std::max(q1, q2))) : parse_int(ns);
    auto trace = zaharescu::construct_small_square(q1, q2, N);

    Record r = io::make_record("construct");
    r["q1"] = to_decimal(q1);
    r["q2"] = to_decimal(q2);
    r["N"] = to_decimal(N);
    r["trace"] = io::to_json(trace);
    r["x2_ratio"] = io::fixed(zaharescu::x2_ratio(q1, N, trace.witness), 6);
    r["x1_ratio"] = io::fixed(zaharescu::x1_ratio(q1, q2, N, trace.witness), 6);
    if (minimal)
        r["minimal"] = io::to_json(zaharescu::minimal_representation(q1, q2, N, s.globals().guard));
    s.emit(r);
    const auto& w = trace.witness;
    s.log() << w.x1 << "*" << q1 << " + " << w.x2 << "*" << q2 << " = " << w.n << "^2 with n <= " << N << "\n";
    return kSuccess;
}

int cmd_reduce(Session& s, const InstanceArgs& a, const std::string& small_gcd, bool verify) {
    TwoDAP ap = a.progression();
    Int T = a.T();
    lattice::ReduceOptions options;
    options.small_gcd_limit = parse_int(small_gcd);
    auto chain = lattice::reduce_recursive(ap.q1(), ap.q2(), ap.x1_bound(), ap.x2_bound(), T, options);

    bool failed = false;
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
        const auto& step = chain.steps[i];
        Record r = io::make_record("reduce_step");
        r["index"] = std::to_string(i);
        r.update(io::to_json(step));
        if (verify && step.lattice_step) {
            auto verdict = lattice::verify_reduction(*step.lattice_step, step.input, step.T, s.globals().guard);
            r["verdict"] = lattice::to_string(verdict.status);
            r["verdict_detail"] = verdict.detail;
            failed = failed || verdict.status == lattice::ReductionVerdict::Status::Fail;
        }
        s.emit(r);
    }
    Record r = io::make_record("reduce_chain");
    r["steps"] = std::to_string(chain.steps.size());
    r["terminal"] = lattice::to_string(chain.terminal);
    r["final"] = io::to_json(chain.final_instance);
    r["final_T"] = to_decimal(chain.final_T);
    r["proper"] = chain.proper ? Record(*chain.proper) : Record(nullptr);
    r["dichotomy"] = chain.dichotomy ? Record(*chain.dichotomy) : Record(nullptr);
    s.emit(r);
    s.log() << chain.steps.size() << " step(s), terminal " << lattice::to_string(chain.terminal) << "\n";
    return failed ? kWitness : kSuccess;
}

int cmd_lower(Session& s, const std::string& ps, const std::string& froms, const std::string& tos, bool brute) {
    std::vector<Int> primes;
    if (!ps.empty()) {
        primes.push_back(parse_int(ps));
    } else {
        if (tos.empty())
            fail(ErrorCode::DomainError, "lower: give --p or --to");
        Int from = parse_int(froms), to = parse_int(tos);
        if (to > Int(std::numeric_limits<std::uint32_t>::max()) - 1)
            fail(ErrorCode::TooLarge, "lower: --to exceeds the sieve range");
        if (to >= 2)
            for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(to)))
                if (p >= 13 && p % 4 == 1 && p >= from)
                    primes.emplace_back(p);
    }

    bool all_pass = true;
    std::optional<lowerbound::LowerBoundInstance> best;
    for (const Int& p : primes) {
        auto inst = lowerbound::build_instance(p);
        auto cert = lowerbound::residue_certificate(inst);
        TwoDAP ap = inst.progression();
        std::string brute_result = "skipped";
        bool ok = cert.pass;
        if (brute) {
            bool clean = !brute_force_witness(ap, s.globals().guard).has_value();
            brute_result = clean ? "square-free" : "witness";
            ok = ok && clean;
        }
        bool proper = is_proper(ap);
        Rat ratio = lowerbound::size_vs_T(inst);
        ok = ok && proper && ratio >= 1;
        all_pass = all_pass && ok;
        if (!best || inst.size > best->size)
            best = inst;

        Record r = io::make_record("lower");
        r.update(io::to_json(inst));
        r["certificate"] = io::to_json(cert);
        r["brute_force"] = brute_result;
        r["proper"] = proper;
        r["size_ratio"] = to_decimal(ratio);
        r["size_ratio_fixed"] = to_fixed(ratio, 6);
        s.emit(r);
    }
    Record r = io::make_record("lower_summary");
    r["count"] = std::to_string(primes.size());
    r["all_pass"] = all_pass;
    r["best_p"] = best ? Record(to_decimal(best->p)) : Record(nullptr);
    r["best_size"] = best ? Record(to_decimal(best->size)) : Record(nullptr);
    s.emit(r);
    s.log() << primes.size() << " prime(s), " << (all_pass ? "all certified" : "CERTIFICATION FAILURES") << "\n";
    return all_pass ? kSuccess : kWitness;
}

int cmd_scan_nqr(Session& s, const std::string& froms, const std::string& tos, bool summary_only) {
    auto scan = lowerbound::salie_scan(parse_int(tos), parse_int(froms));
    if (!summary_only)
        for (const auto& rec : scan.records) {
            Record r = io::make_record("nqr");
            r.update(io::to_json(rec));
            s.emit(r);
        }
    const auto& sum = scan.summary;
    Record running = Record::array();
    for (const auto& rec : sum.running_records)
        running.push_back(Record::array({to_decimal(rec.p), to_decimal(rec.nqr)}));
    Record r = io::make_record("nqr_summary");
    r["primes"] = std::to_string(sum.primes);
    r["max_nqr"] = to_decimal(sum.max_nqr);
    r["argmax_p"] = to_decimal(sum.argmax_p);
    r["max_ratio_log"] = io::fixed(sum.max_ratio_log, 6);
    r["argmax_ratio_p"] = to_decimal(sum.argmax_ratio_p);
    r["running_records"] = running;
    r["below_sqrt_bound"] = sum.below_sqrt_bound;
    r["max_burgess_ratio"] = io::fixed(sum.max_burgess_ratio, 6);
    s.emit(r);
    s.log() << sum.primes << " prime(s); max n(p) = " << sum.max_nqr << " at p = " << sum.argmax_p
            << "; max n(p)/log p = " << io::fixed(sum.max_ratio_log, 4) << " at p = " << sum.argmax_ratio_p
            << "\n";
    return kSuccess;
}

std::string to_string(const bounds::ExponentPoint& p) {
    return to_decimal(p.a) + " " + to_decimal(p.b);
}

int cmd_exponent(Session& s, int grid, const std::string& branch_name, const std::string& b_max_text) {
    if (grid < 1)
        fail(ErrorCode::DomainError, "exponent: --grid must be >= 1");
    bounds::Branch branch;
    if (branch_name == "overall")
        branch = bounds::Branch::Overall;
    else if (branch_name == "case_one")
        branch = bounds::Branch::CaseOne;
    else if (branch_name == "case_two")
        branch = bounds::Branch::CaseTwo;
    else
        fail(ErrorCode::DomainError, "exponent: unknown branch '" + branch_name + "'");
    std::optional<Rat> b_max;
    if (!b_max_text.empty())
        b_max = parse_rat(b_max_text);

    for (int j = 0; j <= grid; ++j)
        for (int i = 0; i <= j; ++i) {
            bounds::ExponentPoint p{Rat(i, grid), Rat(j, grid)};
            if (b_max && p.b > *b_max)
                continue;
            auto rep = bounds::case_exponent(p);
            Record r = io::make_record("exponent_point");
            r["a"] = to_decimal(p.a);
            r["b"] = to_decimal(p.b);
            r["label"] = bounds::to_string(rep.label);
            r["exponent"] = to_decimal(rep.exponent);
            r["case_one_label"] = bounds::to_string(rep.case_one_label);
            r["case_one"] = to_decimal(rep.case_one);
            r["case_two_label"] = bounds::to_string(rep.case_two_label);
            r["case_two"] = to_decimal(rep.case_two);
            s.emit(r);
        }

    auto sup = bounds::exponent_supremum(grid, branch, b_max);
    std::string attained;
    for (const auto& p : sup.attained_at)
        attained += (attained.empty() ? "" : "; ") + to_string(p);
    Record r = io::make_record("exponent_supremum");
    r["grid"] = std::to_string(grid);
    r["branch"] = branch_name;
    r["b_max"] = b_max ? Record(to_decimal(*b_max)) : Record(nullptr);
    r["supremum"] = to_decimal(sup.supremum);
    r["attained_count"] = std::to_string(sup.attained_at.size());
    r["attained_at"] = attained;
    s.emit(r);
    s.log() << "supremum " << to_decimal(sup.supremum) << " over grid " << grid << " (" << branch_name
            << "), attained at " << sup.attained_at.size() << " point(s), last "
            << to_string(*std::max_element(sup.attained_at.begin(), sup.attained_at.end())) << "\n";
    return kSuccess;
}

Record family_record(std::string_view kind, const sweep::FamilyBest& fb, const Int& T) {
    Record r = io::make_record(kind);
    r["family"] = std::string(sweep::to_string(fb.family));
    r["instance"] = io::to_json(fb.best);
    r["size"] = to_decimal(fb.size);
    r["T"] = to_decimal(T);
    r["evaluations"] = std::to_string(fb.evaluations);
    r["detail"] = fb.detail;
    r["ratio_to_T_20_27"] = sweep::ratio_to_T_20_27(fb.size, T);
    r["ratio_to_sqrtT_logT"] = sweep::ratio_to_sqrtT_logT(fb.size, T);
    return r;
}

int cmd_sweep(Session& s, const std::string& ts, const std::string& families, std::uint64_t budget) {
    sweep::SweepConfig config;
    config.T = parse_int(ts);
    config.families.clear();
    std::stringstream list(families);
    for (std::string name; std::getline(list, name, ',');)
        if (!name.empty())
            config.families.push_back(sweep::parse_family(name));
    config.budget = budget;
    config.seed = s.globals().seed;
    config.threads = s.globals().threads;

    auto result = sweep::run_sweep(config);
    for (const auto& fb : result.per_family)
        s.emit(family_record("sweep_family", fb, config.T));
    Record r = family_record("sweep_result", result.best, config.T);
    r["seed"] = std::to_string(config.seed);
    r["budget"] = std::to_string(config.budget);
    s.emit(r);
    for (const auto& fb : result.per_family)
        s.log() << sweep::to_string(fb.family) << ": size " << fb.size << " (" << fb.detail << ")\n";
    s.log() << "best " << result.best.size << " from " << sweep::to_string(result.best.family)
            << "; size/T^(20/27) = " << result.ratio_to_T_20_27
            << ", size/(sqrt(T) log T) = " << result.ratio_to_sqrtT_logT << "\n";
    return kSuccess;
}

int report_error(std::ostream& out, std::ostream& err, std::string_view code, std::string_view message) {
    out << io::error_record(code, message).dump() << '\n';
    err << "error (" << code << "): " << message << "\n";
    return kError;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Square-avoiding two-dimensional progressions: search, certificates and sweeps", "sqap"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--output", g.output, "write records to this file instead of standard output");
    app.add_option("--format", g.format, "jsonl or csv (exponent defaults to csv, everything else to jsonl)")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    app.add_option("--threads", g.threads, "worker threads for sweep")->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", g.seed, "seed for the random_local family");
    app.add_option("--guard", g.guard, "cap on exhaustive enumeration sizes");

    InstanceArgs witness_args, verify_args, reduce_args;
    std::string method = "fast";
    auto* witness = app.add_subcommand("witness", "least square in the progression, if any");
    witness_args.attach(witness);
    witness->add_option("--method", method, "fast, brute or both")->check(CLI::IsMember({"fast", "brute", "both"}));

    auto* verify = app.add_subcommand("verify", "certify square-freeness within [-T, T]");
    verify_args.attach(verify);

    std::string c_q1, c_q2, c_n;
    bool minimal = false;
    auto* construct = app.add_subcommand("construct", "build a small square x1 q1 + x2 q2 = n^2, n <= N");
    construct->add_option("--q1", c_q1)->required();
    construct->add_option("--q2", c_q2)->required();
    construct->add_option("--n", c_n, "bound N (default ceil(q1^(9/16) q2^(1/4)))");
    construct->add_flag("--minimal", minimal, "also report the exhaustive minimal representation");

    std::string small_gcd = "16";
    bool reduce_verify = false;
    auto* reduce = app.add_subcommand("reduce", "gcd and lattice reduction chain");
    reduce_args.attach(reduce);
    reduce->add_option("--small-gcd", small_gcd, "gcds up to this are divided out directly");
    reduce->add_flag("--verify", reduce_verify, "recheck every lattice step by enumeration");

    std::string l_p, l_from = "13", l_to;
    bool l_brute = true;
    auto* lower = app.add_subcommand("lower", "non-residue construction for primes p = 1 (mod 4)");
    lower->add_option("--p", l_p, "a single prime");
    lower->add_option("--from", l_from, "smallest prime of the range");
    lower->add_option("--to", l_to, "largest prime of the range");
    lower->add_flag("--brute,!--no-brute", l_brute, "independent brute-force square check (default on)");

    std::string s_from = "0", s_to;
    bool summary_only = false;
    auto* scan = app.add_subcommand("scan-nqr", "least quadratic non-residues of primes p = 1 (mod 4)");
    scan->add_option("--from", s_from);
    scan->add_option("--to", s_to)->required();
    scan->add_flag("--summary-only", summary_only);

    int grid = 54;
    std::string branch = "overall", b_max;
    auto* exponent = app.add_subcommand("exponent", "piecewise exponent over a grid of (a, b)");
    exponent->add_option("--grid", grid, "grid resolution r, points (i/r, j/r)");
    exponent->add_option("--branch", branch, "overall, case_one or case_two")
        ->check(CLI::IsMember({"overall", "case_one", "case_two"}));
    exponent->add_option("--b-max", b_max, "restrict to b <= this rational");

    std::string w_t, families = "one_d,lower_bound,random_local";
    std::uint64_t budget = 4096;
    auto* sweep_cmd = app.add_subcommand("sweep", "search for large square-free progressions in [-T, T]");
    sweep_cmd->add_option("--t", w_t, "ambient bound T >= 100")->required();
    sweep_cmd->add_option("--families", families, "comma-separated subset of one_d,lower_bound,random_local");
    sweep_cmd->add_option("--budget", budget, "candidate evaluations for random_local")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return report_error(out, err, "UsageError", e.what());
    }

    try {
        auto session = [&](std::string_view default_format, const std::vector<std::string>& columns) {
            return std::make_unique<Session>(g, out, err, default_format, columns);
        };
        if (witness->parsed())
            return cmd_witness(*session("jsonl", kWitnessColumns), witness_args, method);
        if (verify->parsed())
            return cmd_verify(*session("jsonl", kVerifyColumns), verify_args);
        if (construct->parsed())
            return cmd_construct(*session("jsonl", kConstructColumns), c_q1, c_q2, c_n, minimal);
        if (reduce->parsed())
            return cmd_reduce(*session("jsonl", kReduceColumns), reduce_args, small_gcd, reduce_verify);
        if (lower->parsed())
            return cmd_lower(*session("jsonl", kLowerColumns), l_p, l_from, l_to, l_brute);
        if (scan->parsed())
            return cmd_scan_nqr(*session("jsonl", kScanColumns), s_from, s_to, summary_only);
        if (exponent->parsed())
            return cmd_exponent(*session("csv", kExponentColumns), grid, branch, b_max);
        if (sweep_cmd->parsed())
            return cmd_sweep(*session("jsonl", kSweepColumns), w_t, families, budget);
    } catch (const Error& e) {
        return report_error(out, err, to_string(e.code()), e.what());
    } catch (const std::exception& e) {
        return report_error(out, err, "InternalError", e.what());
    }
    return report_error(out, err, "UsageError", "no subcommand");
}

} // namespace sqap::cli
