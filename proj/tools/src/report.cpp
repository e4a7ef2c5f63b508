#include "spinsys/cli/report.hpp"

#include "spinsys/error.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace spinsys::cli {

Json number6(double value) {
    if (!std::isfinite(value)) return nullptr;
    std::array<char, 32> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.6g", value);
    const double rounded = std::strtod(buffer.data(), nullptr);
    if (rounded == std::trunc(rounded) && std::fabs(rounded) < 9007199254740992.0) {
        return static_cast<std::int64_t>(rounded);
    }
    return Json::parse(buffer.data());
}

std::string csv_cell(const Json& value) {
    std::string text;
    if (value.is_null()) return {};
    if (value.is_string()) {
        text = value.get<std::string>();
    } else if (value.is_structured()) {
        text = value.dump();
    } else {
        return value.dump();
    }
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (const char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string render(const Report& report, const std::string& format) {
    if (format == "json") {
        if (!report.table && report.rows.size() == 1) return report.rows.front().dump(2) + "\n";
        Json array = Json::array();
        for (const auto& row : report.rows) array.push_back(row);
        return array.dump(2) + "\n";
    }
    if (format != "csv") throw InvalidArgument("unknown output format '" + format + "'");
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (i) out += ",";
        out += csv_cell(report.columns[i]);
    }
    out += "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            if (i) out += ",";
            const auto it = row.find(report.columns[i]);
            if (it != row.end()) out += csv_cell(*it);
        }
        out += "\n";
    }
    return out;
}

void emit_report(const Report& report, const std::string& format, const std::string& path, std::ostream& fallback) {
    const std::string text = render(report, format);
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw InvalidArgument("cannot write output file '" + path + "'");
    file << text;
    if (!file) throw InvalidArgument("failed writing output file '" + path + "'");
}

}  // namespace spinsys::cli
