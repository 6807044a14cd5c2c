#include "qheat/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace qheat {

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::invalid_argument("report: row width does not match columns");
    rows.push_back(std::move(row));
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return csv_field(v);
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::to_string(v);
        },
        c);
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

// JSON has no nan/inf; those become strings
std::string json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return json_string(v);
            else if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? format_double(v) : json_string(format_double(v));
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return std::to_string(v);
        },
        c);
}

}  // namespace

void write_csv(const Report& r, std::ostream& os) {
    for (size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_field(r.columns[i]);
    os << "\n";
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
    }
}

void write_json(const Report& r, std::ostream& os) {
    os << "{\n  \"schema\": " << json_string(kSchema) << ",\n  \"command\": " << json_string(r.command) << ",\n  \"meta\": {";
    bool first = true;
    for (const auto& [k, v] : r.meta) {
        os << (first ? "" : ", ") << json_string(k) << ": " << json_string(v);
        first = false;
    }
    os << "},\n  \"columns\": [";
    for (size_t i = 0; i < r.columns.size(); ++i) os << (i ? ", " : "") << json_string(r.columns[i]);
    os << "],\n  \"rows\": [";
    for (size_t j = 0; j < r.rows.size(); ++j) {
        os << (j ? ",\n    [" : "\n    [");
        for (size_t i = 0; i < r.rows[j].size(); ++i) os << (i ? ", " : "") << json_cell(r.rows[j][i]);
        os << "]";
    }
    os << (r.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace qheat
