#pragma once

#include "cptx/cli/config.hpp"
#include "cptx/cli/csv.hpp"
#include "cptx/oracle.hpp"
#include "cptx/solution.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cptx::cli {

struct RunSummary {
    Solution solution;
    /// Intermediate quantities in display order.
    std::vector<std::pair<std::string, std::string>> diagnostics;
    std::optional<OracleReport> oracle;
    SweepRow row;
};

/// Validates the config, solves it and, when requested, runs the oracle.
RunSummary solve_once(const RunConfig& cfg);

/// One independent solve per grid value; failures are recorded per row.
std::vector<SweepRow> sweep(const RunConfig& cfg, const SweepAxis& axis);

std::string format_summary(const RunSummary& s);

/// Entry point of the command-line tool. Exit codes: 0 success,
/// 2 invalid input, 3 oracle mismatch, 1 other failures.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace cptx::cli
