#pragma once

#include "sqap/lattice.hpp"
#include "sqap/lowerbound.hpp"
#include "sqap/progression.hpp"
#include "sqap/zaharescu.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sqap::io {

// Bumped whenever a field name, column or meaning changes.
inline constexpr int kSchemaVersion = 1;

using Record = nlohmann::ordered_json;

enum class Format { Jsonl, Csv };

Format parse_format(std::string_view name);

// {"schema_version": 1, "record": kind}
Record make_record(std::string_view kind);

// All integers and rationals are emitted as decimal strings.
Record to_json(const TwoDAP& ap);
Record to_json(const SquareWitness& w);
Record to_json(const zaharescu::ZaharescuTrace& trace);
Record to_json(const lattice::Vec2& v);
Record to_json(const lattice::ReductionStep& step);
Record to_json(const lattice::ChainStep& step);
Record to_json(const lowerbound::LowerBoundInstance& inst);
Record to_json(const lowerbound::ResidueCertificate& cert);
Record to_json(const lowerbound::NonResidueRecord& rec);

// Display-only rendering of a double.
std::string fixed(double value, int digits);

Record error_record(std::string_view code, std::string_view message);

// Nested objects become dotted keys; arrays are kept as compact JSON text.
std::vector<std::pair<std::string, std::string>> flatten(const Record& record);

/// Writes records as JSON lines, or as CSV with a frozen column list. The
/// CSV header goes out before the first row; absent fields are left empty.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns);

    void write(const Record& record);
    std::size_t rows() const { return rows_; }

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
    std::size_t rows_ = 0;
};

std::string csv_escape(std::string_view field);

} // namespace sqap::io
