#include "doctest.h"

#include "sqap/cli.hpp"
#include "sqap/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;

    std::vector<json> records() const {
        std::vector<json> rows;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);)
            rows.push_back(json::parse(line));
        return rows;
    }

    std::vector<std::string> lines() const {
        std::vector<std::string> rows;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);)
            rows.push_back(line);
        return rows;
    }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = sqap::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Every leaf except schema_version must be a string, boolean or null.
void check_no_numbers(const json& node, const std::string& path = "") {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
            if (it.key() != "schema_version")
                check_no_numbers(it.value(), path + "." + it.key());
    } else if (node.is_array()) {
        for (const auto& v : node)
            check_no_numbers(v, path + "[]");
    } else {
        CAPTURE(path);
        CHECK_FALSE(node.is_number());
    }
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> split_csv_simple(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream s(line);
    for (std::string cell; std::getline(s, cell, ',');)
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

} // namespace

TEST_CASE("verify examples") {
    auto ok = run({"verify", "--q1", "13", "--q2", "15", "--x1", "12", "--x2", "1", "--t", "338"});
    CHECK(ok.code == 0);
    auto rec = ok.records().at(0);
    CHECK(rec["schema_version"] == 1);
    CHECK(rec["record"] == "verify");
    CHECK(rec["kind"] == "SquareFree");
    CHECK(rec["proper"] == true);
    CHECK(rec["cardinality"] == "75");
    CHECK(rec["witness"].is_null());
    check_no_numbers(rec);
    CHECK(ok.err.find("square-free") != std::string::npos);

    auto bad = run({"verify", "--q1", "3", "--q2", "5", "--x1", "2", "--x2", "2", "--t", "25"});
    CHECK(bad.code == 1);
    auto w = bad.records().at(0)["witness"];
    CHECK(w["x1"] == "2");
    CHECK(w["x2"] == "-1");
    CHECK(w["n"] == "1");
}

TEST_CASE("witness methods agree") {
    for (const char* method : {"fast", "brute", "both"}) {
        auto r = run({"witness", "--q1", "3", "--q2", "5", "--x1", "2", "--x2", "2", "--t", "25", "--method", method});
        CHECK(r.code == 1);
        CHECK(r.records().at(0)["witness"]["n"] == "1");
    }
    auto none = run({"witness", "--q1", "13", "--q2", "15", "--x1", "12", "--x2", "1", "--t", "338", "--method", "both"});
    CHECK(none.code == 0);
    CHECK(none.records().at(0)["found"] == false);
    // Squares above T do not count.
    auto capped = run({"witness", "--q1", "5", "--q2", "3", "--x1", "5", "--x2", "0", "--t", "24", "--method", "both"});
    CHECK(capped.code == 0);
    auto uncapped = run({"witness", "--q1", "5", "--q2", "3", "--x1", "5", "--x2", "0", "--t", "25"});
    CHECK(uncapped.code == 1);
}

TEST_CASE("large integers pass through as decimal strings") {
    std::string big = "170141183460469231731687303715884105727"; // 2^127 - 1, prime
    auto r = run({"verify", "--q1", big, "--q2", big + "0", "--x1", "0", "--x2", "0", "--t", big});
    CHECK(r.code == 0);
    CHECK(r.records().at(0)["instance"]["q1"] == big);
}

TEST_CASE("exponent grid reports the supremum row") {
    auto r = run({"exponent", "--grid", "54"});
    REQUIRE(r.code == 0);
    auto rows = r.lines();
    auto header = split_csv_simple(rows.at(0));
    CHECK(header.at(0) == "schema_version");
    CHECK(header.at(1) == "record");
    CHECK(rows.size() == 1 + 55 * 56 / 2 + 1);

    const std::string& last = rows.back();
    auto cells = split_csv_simple(last);
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        REQUIRE(it != header.end());
        return cells.at(static_cast<std::size_t>(it - header.begin()));
    };
    CHECK(col("record") == "exponent_supremum");
    CHECK(col("supremum") == "20/27");
    CHECK(last.find("16/27 2/3") != std::string::npos);

    auto restricted = run({"exponent", "--grid", "54", "--branch", "case_one", "--b-max", "4/7", "--format", "jsonl"});
    REQUIRE(restricted.code == 0);
    auto sup = restricted.records().back();
    CHECK(sup["supremum"] == "5/7");
    CHECK(sup["b_max"] == "4/7");
}

TEST_CASE("construct and reduce") {
    auto c = run({"construct", "--q1", "7", "--q2", "11", "--minimal"});
    REQUIRE(c.code == 0);
    auto rec = c.records().at(0);
    long x1 = std::stol(rec["trace"]["witness"]["x1"].get<std::string>());
    long x2 = std::stol(rec["trace"]["witness"]["x2"].get<std::string>());
    long n = std::stol(rec["trace"]["witness"]["n"].get<std::string>());
    CHECK(x1 * 7 + x2 * 11 == n * n);
    CHECK(n <= std::stol(rec["N"].get<std::string>()));
    CHECK(rec.contains("minimal"));

    auto nc = run({"construct", "--q1", "6", "--q2", "10"});
    CHECK(nc.code == 2);
    CHECK(nc.records().at(0)["code"] == "NotCoprime");

    auto r = run({"reduce", "--q1", "12", "--q2", "20", "--x1", "4", "--x2", "4", "--t", "200", "--verify"});
    REQUIRE(r.code == 0);
    auto recs = r.records();
    CHECK(recs.front()["record"] == "reduce_step");
    CHECK(recs.front()["kind"] == "divide_out");
    CHECK(recs.back()["record"] == "reduce_chain");
    CHECK(recs.back()["terminal"] == "coprime");
    for (const auto& x : recs)
        check_no_numbers(x);

    auto lat = run({"reduce", "--q1", "6", "--q2", "10", "--x1", "4", "--x2", "4", "--t", "100", "--small-gcd", "1", "--verify"});
    REQUIRE(lat.code == 0);
    auto step = lat.records().front();
    CHECK(step["kind"] == "lattice");
    CHECK(step["lattice"]["d"] == "2");
    CHECK(step["verdict"] == "hypothesis_fails");
}

TEST_CASE("lower and scan-nqr") {
    auto r = run({"lower", "--from", "13", "--to", "200"});
    REQUIRE(r.code == 0);
    auto recs = r.records();
    CHECK(recs.front()["p"] == "13");
    CHECK(recs.front()["size"] == "75");
    CHECK(recs.front()["brute_force"] == "square-free");
    CHECK(recs.back()["record"] == "lower_summary");
    CHECK(recs.back()["all_pass"] == true);

    auto bad = run({"lower", "--p", "11"});
    CHECK(bad.code == 2);
    CHECK(bad.records().at(0)["code"] == "BadPrime");

    auto s = run({"scan-nqr", "--to", "100", "--summary-only"});
    REQUIRE(s.code == 0);
    auto sum = s.records().at(0);
    CHECK(sum["max_nqr"] == "5");
    CHECK(sum["argmax_p"] == "73");
    CHECK(sum["primes"] == "10");
}

TEST_CASE("sweep through the command line") {
    auto r = run({"sweep", "--t", "338", "--families", "lower_bound"});
    REQUIRE(r.code == 0);
    auto best = r.records().back();
    CHECK(best["record"] == "sweep_result");
    CHECK(best["size"] == "75");
    CHECK(best["instance"]["q1"] == "13");
    check_no_numbers(best);

    auto low = run({"sweep", "--t", "99"});
    CHECK(low.code == 2);
    CHECK(low.records().at(0)["code"] == "DomainError");
}

TEST_CASE("sweep output files are byte-identical for a fixed seed") {
    auto dir = std::filesystem::temp_directory_path() / "sqap_cli_test";
    std::filesystem::create_directories(dir);
    auto a = dir / "a.jsonl", b = dir / "b.jsonl", c = dir / "c.csv";
    auto ra = run({"sweep", "--t", "100000", "--budget", "800", "--seed", "99", "--threads", "1", "--output", a.string()});
    auto rb = run({"--threads", "3", "--seed", "99", "--output", b.string(), "sweep", "--t", "100000", "--budget", "800"});
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.out.empty());
    CHECK_FALSE(slurp(a).empty());
    CHECK(slurp(a) == slurp(b));

    auto rc = run({"sweep", "--t", "100000", "--budget", "800", "--seed", "99", "--format", "csv", "--output", c.string()});
    REQUIRE(rc.code == 0);
    std::istringstream csv(slurp(c));
    std::string header;
    std::getline(csv, header);
    CHECK(header.rfind("schema_version,record,family,", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("usage and domain errors exit 2 with an error object") {
    auto missing = run({"verify", "--q1", "3"});
    CHECK(missing.code == 2);
    CHECK(missing.records().at(0)["record"] == "error");
    CHECK(missing.records().at(0)["code"] == "UsageError");

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);

    auto malformed = run({"verify", "--q1", "12x", "--q2", "5", "--x1", "1", "--x2", "1", "--t", "10"});
    CHECK(malformed.code == 2);
    CHECK(malformed.records().at(0)["code"] == "DomainError");

    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("scan-nqr") != std::string::npos);
}

TEST_CASE("csv escaping and flattening") {
    using sqap::io::csv_escape;
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");

    sqap::io::Record r = sqap::io::make_record("x");
    r["nested"] = {{"a", "1"}, {"b", nullptr}};
    r["list"] = sqap::io::Record::array({"1", "2"});
    auto flat = sqap::io::flatten(r);
    REQUIRE(flat.size() == 5);
    CHECK(flat[2].first == "nested.a");
    CHECK(flat[3].second.empty());
    CHECK(flat[4].second == "[\"1\",\"2\"]");

    std::ostringstream out;
    sqap::io::RecordWriter w(out, sqap::io::Format::Csv, {"record", "nested.a", "missing"});
    w.write(r);
    CHECK(out.str() == "record,nested.a,missing\nx,1,\n");
}
