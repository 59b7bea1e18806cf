#pragma once

// Tabular report values plus lossless JSON / RFC-4180 CSV serialization.
// Serialization is byte-deterministic for a fixed table; runtime lives in a
// side field that is never serialized (it would break determinism).

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace lowlying::report {

using Value = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
    std::string name;
    std::vector<std::pair<std::string, Value>> meta;   // insertion-ordered
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
    double runtime_seconds = 0.0;                      // diagnostics only

    void add_meta(std::string key, Value v) { meta.emplace_back(std::move(key), std::move(v)); }
};

// shortest decimal that round-trips the double
std::string format_double(double v);

std::string to_json(const Table& t);
std::string to_csv(const Table& t);

// inverse of to_json (used by the round-trip tests and downstream tooling)
Table from_json(const std::string& bytes);

bool operator==(const Table& a, const Table& b);

} // namespace lowlying::report
