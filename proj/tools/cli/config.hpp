// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration files for the mabeam tool. The file is JSON:
//
//   {
//     "n": 8,
//     "theta0_deg": 90,
//     "interferers_deg": [30, 82, 100],
//     "d_min": 0.5,
//     "mode": "table-consistent",
//     "sweep": {"start_deg": 0, "stop_deg": 180, "step_deg": 0.1},
//     "theta1_sweep": {"start_deg": 10, "stop_deg": 170, "step_deg": 1},
//     "oracle": {"upper_bound": 2.0, "step": 0.001},
//     "lambda_m": 0.01
//   }
//
// Every key except "n" is optional.

#ifndef MABEAM_CLI_CONFIG_HPP
#define MABEAM_CLI_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mabeam/array.hpp"

namespace mabeam::cli {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepRange {
  double start_deg;
  double stop_deg;
  double step_deg;
};

struct ScenarioConfig {
  int n = 0;
  double theta0_deg = 90.0;
  std::vector<double> interferers_deg;
  double d_min = kDefaultMinSpacing;
  std::string mode = "table-consistent";
  SweepRange sweep{0.0, 180.0, 0.1};         // pattern grid, stop exclusive
  SweepRange theta1_sweep{10.0, 170.0, 1.0};  // undesired-direction grid, stop inclusive
  std::optional<double> oracle_bound;         // derived from the scenario when absent
  double oracle_step = 1e-3;
  std::optional<double> lambda_m;             // display only
};

ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

SynthesisMode parse_mode(std::string_view mode);
std::string_view mode_name(SynthesisMode mode);

/// Throws InputError naming the violated constraint.
Scenario to_scenario(const ScenarioConfig& config);

}  // namespace mabeam::cli

#endif  // MABEAM_CLI_CONFIG_HPP
