#include "spinsys/cli/config.hpp"

#include "spinsys/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spinsys::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

template <class T>
T parse_integer(const std::string& value, const std::string& where, T minimum) {
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || out < minimum) {
        throw ParseError(where + ": expected an integer >= " + std::to_string(minimum) + ", got '" + value + "'");
    }
    return out;
}

double parse_real(const std::string& value, const std::string& where) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used == value.size()) return out;
    } catch (const std::exception&) {
    }
    throw ParseError(where + ": expected a number, got '" + value + "'");
}

bool parse_bool(const std::string& value, const std::string& where) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ParseError(where + ": expected true or false, got '" + value + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "field", "form", "ideal", "ideals", "box", "budget", "format", "output", "threads", "seed",
        "degree", "dim", "nu", "mu", "code_n", "c1", "c2", "c3", "sys", "eps", "vol", "inj_constant",
        "elements", "good"};
    return keys;
}

std::vector<Setting> parse_config_text(const std::string& text, const std::string& origin) {
    std::vector<Setting> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string where = origin + ":" + std::to_string(number);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
        if (value.empty()) throw ParseError(where + ": empty value for '" + key + "'");
        // Validate early so the diagnostic points at the line.
        RunConfig scratch;
        apply_setting(scratch, key, value, where);
        out.emplace_back(key, value);
    }
    return out;
}

std::vector<Setting> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value, const std::string& where) {
    const std::string at = where + ": " + key;
    if (key == "field") {
        c.field = value;
    } else if (key == "form") {
        c.form = value;
    } else if (key == "ideal") {
        c.ideal = value;
    } else if (key == "ideals") {
        c.ideals = value;
    } else if (key == "box") {
        c.box = parse_integer<std::int64_t>(value, at, 1);
    } else if (key == "budget") {
        c.budget = parse_integer<std::uint64_t>(value, at, 1);
    } else if (key == "format") {
        if (value != "json" && value != "csv") throw ParseError(at + ": expected json or csv, got '" + value + "'");
        c.format = value;
    } else if (key == "output") {
        c.output = value;
    } else if (key == "threads") {
        c.threads = parse_integer<unsigned>(value, at, 1);
    } else if (key == "seed") {
        c.seed = parse_integer<std::uint64_t>(value, at, 0);
    } else if (key == "degree") {
        c.degree = parse_integer<int>(value, at, 1);
    } else if (key == "dim") {
        c.dim = parse_integer<int>(value, at, 1);
    } else if (key == "nu") {
        c.nu = parse_real(value, at);
    } else if (key == "mu") {
        c.mu = parse_real(value, at);
    } else if (key == "code_n") {
        c.code_n = parse_real(value, at);
    } else if (key == "c1") {
        c.c1 = parse_real(value, at);
    } else if (key == "c2") {
        c.c2 = parse_real(value, at);
    } else if (key == "c3") {
        c.c3 = parse_real(value, at);
    } else if (key == "sys") {
        c.sys = parse_real(value, at);
    } else if (key == "eps") {
        c.eps = parse_real(value, at);
    } else if (key == "vol") {
        c.vol = parse_real(value, at);
    } else if (key == "inj_constant") {
        c.inj_constant = parse_real(value, at);
    } else if (key == "elements") {
        c.elements = parse_bool(value, at);
    } else if (key == "good") {
        c.declared_good = parse_bool(value, at);
    } else {
        throw ParseError(where + ": unknown key '" + key + "'");
    }
}

RunConfig resolve_config(const std::vector<Setting>& file_settings, const std::vector<Setting>& flag_settings) {
    RunConfig config;
    if (const char* env = std::getenv("SPINSYS_BUDGET"); env != nullptr && *env != '\0') {
        apply_setting(config, "budget", env, "SPINSYS_BUDGET");
    }
    for (const auto& [key, value] : file_settings) apply_setting(config, key, value, "config");
    for (const auto& [key, value] : flag_settings) apply_setting(config, key, value, "flag");
    return config;
}

}  // namespace spinsys::cli
