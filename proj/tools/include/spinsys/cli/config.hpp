#pragma once

// Run configuration for the command-line tool.  Values come from built-in
// defaults, then SPINSYS_BUDGET, then a key = value config file, then flags.

#include "spinsys/congruence.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spinsys::cli {

struct RunConfig {
    std::string field = "Q";
    std::string form;
    std::string ideal;
    std::string ideals;
    std::int64_t box = 10;
    std::uint64_t budget = kDefaultBudget;
    std::string format = "json";
    std::string output;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    // 0: take the degree of the field.
    int degree = 0;
    int dim = 2;
    double nu = 1.0;
    double mu = 1.0;
    double code_n = 0.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 1.0;
    // Negative: not requested.
    double sys = -1.0;
    double eps = 0.1;
    double vol = 0.0;
    double inj_constant = 0.0;
    bool elements = false;
    std::optional<bool> declared_good;
};

using Setting = std::pair<std::string, std::string>;

// Every key accepted in config files (flags use the same names with '_'
// replaced by '-').
const std::vector<std::string>& config_keys();

// Parses "key = value" lines; '#' starts a comment.  Diagnostics name the
// file and line.
std::vector<Setting> read_config_file(const std::string& path);
std::vector<Setting> parse_config_text(const std::string& text, const std::string& origin);

// Validates and stores one value.  `where` prefixes diagnostics.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value, const std::string& where);

// Defaults, then SPINSYS_BUDGET, then the file settings, then the flags.
RunConfig resolve_config(const std::vector<Setting>& file_settings, const std::vector<Setting>& flag_settings);

}  // namespace spinsys::cli
