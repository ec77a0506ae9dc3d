// SPDX-License-Identifier: Apache-2.0
//
// mabeam: movable-antenna null-steering synthesis and fixed-array baselines.
//
//   mabeam synthesize --config scenario.json --out report.json
//   mabeam compare --n 8 --theta0 90 --interferers 30,82,100 --out pattern.csv --emit-plot
//   mabeam sweep --n 8 --theta0 90 --theta1-start 10 --theta1-stop 85
//   mabeam oracle --n 2 --theta0 90 --interferers 30 --bound 2
//   mabeam factorize --n 30

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

using mabeam::cli::CommandOutput;
using mabeam::cli::ScenarioConfig;

struct Overrides {
  std::string config_path;
  std::optional<int> n;
  std::optional<double> theta0;
  std::optional<std::vector<double>> interferers;
  std::optional<double> d_min;
  std::optional<std::string> mode;
  std::optional<double> step;
  std::optional<double> start;
  std::optional<double> stop;
  std::optional<double> theta1_start;
  std::optional<double> theta1_stop;
  std::optional<double> bound;
  std::optional<double> grid_step;
  std::optional<double> lambda;
  std::string out;
  bool emit_plot = false;
};

void add_scenario_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON scenario file");
  cmd->add_option("--n", o.n, "Number of antennas");
  cmd->add_option("--theta0", o.theta0, "Desired direction in degrees");
  cmd->add_option("--interferers", o.interferers, "Undesired directions in degrees")
      ->delimiter(',');
  cmd->add_option("--dmin", o.d_min, "Minimum antenna spacing in wavelengths");
  cmd->add_option("--mode", o.mode, "table-consistent | strict");
  cmd->add_option("--lambda", o.lambda, "Wavelength in meters (display only)");
  cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
}

// Flags win over file values.
ScenarioConfig resolve(const Overrides& o, bool interferer_sweep) {
  ScenarioConfig c;
  if (!o.config_path.empty()) c = mabeam::cli::load_config(o.config_path);
  if (o.n) c.n = *o.n;
  if (o.theta0) c.theta0_deg = *o.theta0;
  if (o.interferers) c.interferers_deg = *o.interferers;
  if (o.d_min) c.d_min = *o.d_min;
  if (o.mode) c.mode = *o.mode;
  if (o.lambda) c.lambda_m = *o.lambda;
  mabeam::cli::SweepRange& range = interferer_sweep ? c.theta1_sweep : c.sweep;
  if (o.step) range.step_deg = *o.step;
  if (o.start) c.sweep.start_deg = *o.start;
  if (o.stop) c.sweep.stop_deg = *o.stop;
  if (o.theta1_start) c.theta1_sweep.start_deg = *o.theta1_start;
  if (o.theta1_stop) c.theta1_sweep.stop_deg = *o.theta1_stop;
  if (o.bound) c.oracle_bound = *o.bound;
  if (o.grid_step) c.oracle_step = *o.grid_step;
  return c;
}

int emit(const CommandOutput& result, const Overrides& o, bool csv, bool interferer_sweep) {
  if (!result.diagnostic.empty()) std::cerr << result.diagnostic << "\n";
  if (result.text.empty()) return result.exit_code;
  if (o.out.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      std::cerr << "input error: cannot write " << o.out << "\n";
      return mabeam::cli::kExitInputError;
    }
    file << result.text;
    if (csv && o.emit_plot) {
      std::ofstream plot(o.out + ".gp", std::ios::binary);
      plot << mabeam::cli::plot_script(o.out, interferer_sweep);
    }
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Movable-antenna array beamforming with full gain and null steering"};
  app.require_subcommand(1);
  Overrides o;

  CLI::App* synth = app.add_subcommand("synthesize", "Positions, weights and gain report");
  add_scenario_options(synth, o);

  CLI::App* compare = app.add_subcommand("compare", "Beam patterns of MA and fixed arrays (CSV)");
  add_scenario_options(compare, o);
  compare->add_option("--step", o.step, "Pattern grid step in degrees");
  compare->add_option("--start", o.start, "Pattern grid start in degrees");
  compare->add_option("--stop", o.stop, "Pattern grid stop in degrees (exclusive)");
  compare->add_flag("--emit-plot", o.emit_plot, "Write a gnuplot script next to the CSV");

  CLI::App* sweep = app.add_subcommand("sweep", "Gain at theta0 versus one undesired direction");
  add_scenario_options(sweep, o);
  sweep->add_option("--step", o.step, "theta1 step in degrees");
  sweep->add_option("--theta1-start", o.theta1_start, "First theta1 in degrees");
  sweep->add_option("--theta1-stop", o.theta1_stop, "Last theta1 in degrees (inclusive)");
  sweep->add_flag("--emit-plot", o.emit_plot, "Write a gnuplot script next to the CSV");

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive lattice search for n <= 4");
  add_scenario_options(oracle, o);
  oracle->add_option("--bound", o.bound, "Largest position in wavelengths");
  oracle->add_option("--grid-step", o.grid_step, "Lattice step in wavelengths");

  CLI::App* factorize = app.add_subcommand("factorize", "Prime factors and antenna index digits");
  int factor_n = 0;
  factorize->add_option("--n", factor_n, "Array size")->required();
  factorize->add_option("--out", o.out, "Output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mabeam::cli::kExitInputError;
  }

  try {
    if (*factorize) return emit(mabeam::cli::run_factorize(factor_n), o, false, false);
    if (*synth) return emit(mabeam::cli::run_synthesize(resolve(o, false)), o, false, false);
    if (*compare) return emit(mabeam::cli::run_compare(resolve(o, false)), o, true, false);
    if (*sweep) return emit(mabeam::cli::run_sweep_interferer(resolve(o, true)), o, true, true);
    if (*oracle) return emit(mabeam::cli::run_oracle(resolve(o, false)), o, false, false);
  } catch (const mabeam::cli::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return mabeam::cli::kExitInputError;
  }
  return mabeam::cli::kExitInputError;
}
