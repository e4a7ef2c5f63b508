#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace spinsys::cli {

using Json = nlohmann::ordered_json;

// Homogeneous rows with a fixed column order.  A single-row report renders
// as a JSON object, a table as a JSON array.
struct Report {
    std::vector<std::string> columns;
    std::vector<Json> rows;
    bool table = false;
};

// Double rounded to 6 significant digits; non-finite values become null.
Json number6(double value);

// CSV cell text: strings verbatim unless they need quoting, nested values as
// quoted JSON, null as an empty cell.
std::string csv_cell(const Json& value);

std::string render(const Report& report, const std::string& format);

// Writes to `path`, or to `fallback` when the path is empty.
void emit_report(const Report& report, const std::string& format, const std::string& path, std::ostream& fallback);

}  // namespace spinsys::cli
