#pragma once

#include "spinsys/cli/config.hpp"
#include "spinsys/cli/report.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace spinsys::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitBudget = 3,
    kExitHypothesis = 4,
};

// Subcommand bodies.  Positional arguments (elements) come in `args`.
Report alg_mul(const RunConfig& config, const std::string& lhs, const std::string& rhs);
Report spin_verify(const RunConfig& config, const std::string& element);
Report cong_count(const RunConfig& config);
Report sys_search(const RunConfig& config);
Report sys_bound(const RunConfig& config);
Report sys_report(const RunConfig& config);
Report bounds_report(const RunConfig& config);

// Full command line: parsing, configuration, dispatch, output and exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spinsys::cli
