#include "lowlying/report.hpp"
#include "lowlying/errors.hpp"

#include <json.hpp>

#include <charconv>

namespace lowlying::report {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

namespace {

ordered_json value_to_json(const Value& v) {
    return std::visit([](auto&& x) { return ordered_json(x); }, v);
}

Value json_to_value(const ordered_json& j) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw numeric_error("report value of unsupported JSON type: " + j.dump());
}

std::string csv_field(const Value& v) {
    std::string s = std::visit(
        [](auto&& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::string>) return x;
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>) return format_double(x);
            else return std::to_string(x);
        },
        v);
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

std::string to_json(const Table& t) {
    ordered_json j;
    j["name"] = t.name;
    ordered_json meta = ordered_json::object();
    for (auto& [k, v] : t.meta) meta[k] = value_to_json(v);
    j["meta"] = meta;
    j["columns"] = t.columns;
    ordered_json rows = ordered_json::array();
    for (auto& row : t.rows) {
        ordered_json r = ordered_json::array();
        for (auto& v : row) r.push_back(value_to_json(v));
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

Table from_json(const std::string& bytes) {
    ordered_json j = ordered_json::parse(bytes);
    Table t;
    t.name = j.at("name").get<std::string>();
    for (auto& [k, v] : j.at("meta").items()) t.meta.emplace_back(k, json_to_value(v));
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (auto& row : j.at("rows")) {
        std::vector<Value> r;
        for (auto& v : row) r.push_back(json_to_value(v));
        t.rows.push_back(std::move(r));
    }
    return t;
}

std::string to_csv(const Table& t) {
    std::string out;
    // meta as comment-style preamble rows keeps the CSV self-describing while
    // the header stays machine-friendly
    for (auto& [k, v] : t.meta) {
        out += "# " + k + " = ";
        out += csv_field(v);
        out += "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(t.columns[i]);
    }
    out += "\n";
    for (auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(row[i]);
        }
        out += "\n";
    }
    return out;
}

bool operator==(const Table& a, const Table& b) {
    return a.name == b.name && a.meta == b.meta && a.columns == b.columns &&
           a.rows == b.rows;
}

} // namespace lowlying::report
