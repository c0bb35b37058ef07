#include "sqap/io.hpp"

#include <cstdio>
#include <map>

namespace sqap::io {

Format parse_format(std::string_view name) {
    if (name == "jsonl")
        return Format::Jsonl;
    if (name == "csv")
        return Format::Csv;
    fail(ErrorCode::DomainError, "unknown format '" + std::string(name) + "' (expected jsonl or csv)");
}

Record make_record(std::string_view kind) {
    Record r;
    r["schema_version"] = kSchemaVersion;
    r["record"] = std::string(kind);
    return r;
}

Record to_json(const TwoDAP& ap) {
    Record r;
    r["q1"] = to_decimal(ap.q1());
    r["q2"] = to_decimal(ap.q2());
    r["x1_bound"] = to_decimal(ap.x1_bound());
    r["x2_bound"] = to_decimal(ap.x2_bound());
    return r;
}

Record to_json(const SquareWitness& w) {
    Record r;
    r["x1"] = to_decimal(w.x1);
    r["x2"] = to_decimal(w.x2);
    r["n"] = to_decimal(w.n);
    return r;
}

Record to_json(const zaharescu::ZaharescuTrace& t) {
    Record r;
    r["b"] = to_decimal(t.b);
    r["c"] = to_decimal(t.c);
    r["c_bar"] = to_decimal(t.c_bar);
    r["n"] = to_decimal(t.n);
    r["m"] = to_decimal(t.m);
    r["approx_d"] = to_decimal(t.approx_d);
    r["witness"] = to_json(t.witness);
    return r;
}

Record to_json(const lattice::Vec2& v) {
    return Record::array({to_decimal(v[0]), to_decimal(v[1])});
}

Record to_json(const lattice::ReductionStep& s) {
    Record r;
    r["swapped"] = s.swapped;
    r["d"] = to_decimal(s.d);
    r["qt1"] = to_decimal(s.qt1);
    r["qt2"] = to_decimal(s.qt2);
    r["U"] = to_decimal(s.U);
    r["lambda1_sq"] = to_decimal(s.lambda1_sq);
    r["lambda2_sq"] = to_decimal(s.lambda2_sq);
    r["u"] = to_json(s.u);
    r["v"] = to_json(s.v);
    r["p1"] = to_decimal(s.p1);
    r["p2"] = to_decimal(s.p2);
    r["xt1_sq"] = to_decimal(s.xt1_sq);
    r["xt2_sq"] = to_decimal(s.xt2_sq);
    r["xt1_floor"] = to_decimal(s.xt1_floor);
    r["xt2_floor"] = to_decimal(s.xt2_floor);
    return r;
}

Record to_json(const lattice::ChainStep& s) {
    Record r;
    r["kind"] = lattice::to_string(s.kind);
    r["input"] = to_json(s.input);
    r["T"] = to_decimal(s.T);
    r["d"] = to_decimal(s.d);
    r["lattice"] = s.lattice_step ? to_json(*s.lattice_step) : Record(nullptr);
    r["derived"] = to_json(s.derived);
    r["derived_T"] = to_decimal(s.derived_T);
    r["image1"] = to_json(s.image1);
    r["image2"] = to_json(s.image2);
    return r;
}

Record to_json(const lowerbound::LowerBoundInstance& inst) {
    Record r;
    r["p"] = to_decimal(inst.p);
    r["q"] = to_decimal(inst.q);
    r["nqr"] = to_decimal(inst.nqr);
    r["x1_bound"] = to_decimal(inst.x1_bound);
    r["x2_bound"] = to_decimal(inst.x2_bound);
    r["T"] = to_decimal(inst.T);
    r["size"] = to_decimal(inst.size);
    return r;
}

Record to_json(const lowerbound::ResidueCertificate& cert) {
    Record steps = Record::array();
    for (const auto& s : cert.steps)
        steps.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    Record r;
    r["pass"] = cert.pass;
    r["steps"] = steps;
    return r;
}

Record to_json(const lowerbound::NonResidueRecord& rec) {
    Record r;
    r["p"] = to_decimal(rec.p);
    r["nqr"] = to_decimal(rec.nqr);
    r["ratio_log"] = fixed(rec.ratio_log, 6);
    return r;
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

Record error_record(std::string_view code, std::string_view message) {
    Record r = make_record("error");
    r["code"] = std::string(code);
    r["message"] = std::string(message);
    return r;
}

namespace {

void flatten_into(const Record& node, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it)
            flatten_into(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (node.is_string())
        out.emplace_back(prefix, node.get<std::string>());
    else if (node.is_null())
        out.emplace_back(prefix, "");
    else
        out.emplace_back(prefix, node.dump());
}

} // namespace

std::vector<std::pair<std::string, std::string>> flatten(const Record& record) {
    std::vector<std::pair<std::string, std::string>> out;
    flatten_into(record, "", out);
    return out;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(field);
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

RecordWriter::RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {}

void RecordWriter::write(const Record& record) {
    if (format_ == Format::Jsonl) {
        out_ << record.dump() << '\n';
        ++rows_;
        return;
    }
    if (rows_ == 0) {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            out_ << (i ? "," : "") << csv_escape(columns_[i]);
        out_ << '\n';
    }
    std::map<std::string, std::string> fields;
    for (auto& [key, value] : flatten(record))
        fields.emplace(std::move(key), std::move(value));
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        auto it = fields.find(columns_[i]);
        out_ << (i ? "," : "") << (it == fields.end() ? "" : csv_escape(it->second));
    }
    out_ << '\n';
    ++rows_;
}

} // namespace sqap::io
