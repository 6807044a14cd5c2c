#pragma once

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qheat {

using Cell = std::variant<std::string, double, long, bool>;

struct Report {
    std::string command;
    std::map<std::string, std::string> meta;  // model, gauge, precision notes
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// Doubles use %.17g. Output is deterministic for identical input.
std::string format_double(double x);
void write_csv(const Report& r, std::ostream& os);
void write_json(const Report& r, std::ostream& os);  // schema "qheat/1"

inline constexpr const char* kSchema = "qheat/1";

}  // namespace qheat
