#pragma once

#include <string>
#include <vector>

#include "spinbus/sweep/config.hpp"
#include "spinbus/sweep/result_table.hpp"

namespace spinbus::sweep {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNonConvergence = 3 };

struct CommandResult {
  std::vector<ResultTable> tables;  // the first goes to --out, the rest get a _<name> suffix
  bool passed = true;
  std::vector<std::string> notes;   // diagnostics for stderr
};

CommandResult cmd_spectrum(const SweepConfig& cfg);
CommandResult cmd_fig1(const SweepConfig& cfg);
CommandResult cmd_fig2(const SweepConfig& cfg);
CommandResult cmd_fig3(const SweepConfig& cfg);
CommandResult cmd_gamma(const SweepConfig& cfg);
CommandResult cmd_gate_error(const SweepConfig& cfg);
CommandResult cmd_adiabatic(const SweepConfig& cfg);
CommandResult cmd_validate(const SweepConfig& cfg);

/// Dispatches on cfg.command and stamps every table with the metadata line.
CommandResult run_command(const SweepConfig& cfg);

/// "runs/fig2.csv" + "lsweep" -> "runs/fig2_lsweep.csv".
std::string suffixed_path(const std::string& path, const std::string& suffix);

}  // namespace spinbus::sweep
