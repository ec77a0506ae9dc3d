// SPDX-License-Identifier: Apache-2.0

#include "cli/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mabeam/error.hpp"

namespace mabeam::cli {

namespace {

using nlohmann::json;

template <typename T>
void read_optional(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config key '") + key + "': " + e.what());
  }
}

void read_range(const json& j, const char* key, SweepRange& out) {
  if (!j.contains(key)) return;
  const json& r = j.at(key);
  if (!r.is_object()) throw InputError(std::string("config key '") + key + "' must be an object");
  read_optional(r, "start_deg", out.start_deg);
  read_optional(r, "stop_deg", out.stop_deg);
  read_optional(r, "step_deg", out.step_deg);
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");

  ScenarioConfig c;
  read_optional(j, "n", c.n);
  read_optional(j, "theta0_deg", c.theta0_deg);
  read_optional(j, "interferers_deg", c.interferers_deg);
  read_optional(j, "d_min", c.d_min);
  read_optional(j, "mode", c.mode);
  read_range(j, "sweep", c.sweep);
  read_range(j, "theta1_sweep", c.theta1_sweep);
  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    if (o.contains("upper_bound")) {
      double bound = 0.0;
      read_optional(o, "upper_bound", bound);
      c.oracle_bound = bound;
    }
    read_optional(o, "step", c.oracle_step);
  }
  if (j.contains("lambda_m")) {
    double lambda = 0.0;
    read_optional(j, "lambda_m", lambda);
    c.lambda_m = lambda;
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

SynthesisMode parse_mode(std::string_view mode) {
  if (mode == "table-consistent") return SynthesisMode::kTableConsistent;
  if (mode == "strict") return SynthesisMode::kStrict;
  throw InputError("mode must be 'table-consistent' or 'strict', got '" + std::string(mode) + "'");
}

std::string_view mode_name(SynthesisMode mode) {
  return mode == SynthesisMode::kStrict ? "strict" : "table-consistent";
}

Scenario to_scenario(const ScenarioConfig& config) {
  if (config.n < 1) throw InputError("n must be a positive integer (number of antennas)");
  if (config.lambda_m && !(*config.lambda_m > 0.0)) {
    throw InputError("lambda_m must be positive");
  }
  try {
    return Scenario(config.n, Angle(config.theta0_deg), to_angles(config.interferers_deg),
                    config.d_min, parse_mode(config.mode));
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

}  // namespace mabeam::cli
