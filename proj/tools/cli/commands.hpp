// SPDX-License-Identifier: Apache-2.0

#ifndef MABEAM_CLI_COMMANDS_HPP
#define MABEAM_CLI_COMMANDS_HPP

#include <string>

#include "cli/config.hpp"

namespace mabeam::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitVerificationFailure = 2,
  kExitInternalInconsistency = 3,
};

/// What a subcommand produced. `text` is the primary output (report or CSV);
/// `diagnostic` is meant for stderr.
struct CommandOutput {
  int exit_code = kExitOk;
  std::string text;
  std::string diagnostic;
};

/// Positions, weights and gains report. Uses the closed-form design when
/// K <= I_N and the hybrid position/zero-forcing design otherwise.
CommandOutput run_synthesize(const ScenarioConfig& config);

/// theta_deg,gain_ma,gain_fpa_zf,gain_fpa_kron over the pattern grid.
CommandOutput run_compare(const ScenarioConfig& config);

/// theta1_deg,gain_ma,gain_fpa_zf,gain_fpa_kron: gain at theta0 with a single
/// undesired direction swept over the theta1 grid.
CommandOutput run_sweep_interferer(const ScenarioConfig& config);

/// Exhaustive lattice search next to the closed-form design (n <= 4).
CommandOutput run_oracle(const ScenarioConfig& config);

/// Prime factors, offsets and the digit table of every antenna index.
CommandOutput run_factorize(int n);

/// gnuplot script plotting a CSV written by compare or sweep.
std::string plot_script(const std::string& csv_path, bool interferer_sweep);

/// Fixed six-decimal rendering, independent of the global locale.
std::string format_fixed(double value);

}  // namespace mabeam::cli

#endif  // MABEAM_CLI_COMMANDS_HPP
