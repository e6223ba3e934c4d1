#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qqstab/cli/config.hpp"
#include "qqstab/cli/report_io.hpp"

namespace qqstab::cli {

/// 0 = all checks pass, 1 = a mathematical check failed, 2 = usage/config.
enum ExitStatus { kPass = 0, kFail = 1, kUsage = 2 };

struct CommandResult {
  int status = kPass;
  Json report;
  /// points.csv
  CsvTable points;
  /// trace.csv
  CsvTable trace;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand. Configuration problems surface as InputError;
/// mathematical failures (divergence, regime, infeasible premise) are
/// reported in the result with status 1.
CommandResult run_command(std::string_view name, const RunConfig& cfg);

}  // namespace qqstab::cli
