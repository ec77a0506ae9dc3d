// SPDX-License-Identifier: Apache-2.0

#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "mabeam/mabeam.hpp"

namespace mabeam::cli {

namespace {

using nlohmann::ordered_json;

// Maximum tolerated disagreement between a design's own gain claim and the
// independent recomputation.
constexpr double kConsistencyTolerance = 1e-8;

struct VerificationFailed {
  std::string what;
};

// MA design for one scenario: closed form when possible, hybrid otherwise.
struct MaDesign {
  Apv apv;
  Awv awv;
  double claimed_gain;
  std::optional<SynthesisResult> closed_form;
  std::optional<HybridResult> hybrid;
};

MaDesign design_ma(const Scenario& s) {
  const std::size_t budget = prime_factorize(s.n()).count();
  if (s.k() <= budget) {
    SynthesisResult r = theorem1_apv(s);
    Awv awv = matched_filter_weights(r.apv, s.theta0());
    Apv apv = r.apv;
    return MaDesign{std::move(apv), std::move(awv), static_cast<double>(s.n()), std::move(r),
                    std::nullopt};
  }
  HybridResult h = hybrid_weights(s);
  Apv apv = h.apv;
  Awv awv = h.zf.awv;
  const double gain = h.zf.gain_theta0;
  return MaDesign{std::move(apv), std::move(awv), gain, std::nullopt, std::move(h)};
}

std::optional<ZfResult> design_fpa_zf(const Scenario& s, const Apv& ula) {
  if (s.k() >= static_cast<std::size_t>(s.n())) return std::nullopt;
  try {
    return zf_weights(ula, s.theta0(), s.interferers());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSingularGram || e.code() == ErrorCode::kZeroProjection) {
      return std::nullopt;
    }
    throw;
  }
}

std::optional<KroneckerResult> design_fpa_kron(const Scenario& s) {
  if (s.k() > prime_factorize(s.n()).count()) return std::nullopt;
  return kronecker_analog_weights(s.n(), s.theta0(), s.interferers());
}

void check_consistent(double claimed, double recomputed, const std::string& what) {
  if (std::abs(claimed - recomputed) > kConsistencyTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": design reports gain " << claimed << " but recomputation gives "
       << recomputed;
    throw Error(ErrorCode::kInconsistency, os.str());
  }
}

// Verifies the MA design, failing hard on inconsistency and softly (exit 2)
// when the design does not meet its own contract.
VerificationReport verify_ma(const MaDesign& d, const Scenario& s,
                             std::optional<VerificationFailed>& failure) {
  VerificationReport v = verify_synthesis(d.apv, d.awv, s);
  check_consistent(d.claimed_gain, v.gain_theta0, "movable-antenna design");
  const bool ok = d.hybrid ? v.nulls_pass : v.pass;
  if (!ok && !failure) {
    failure = VerificationFailed{"movable-antenna design failed verification"};
  }
  return v;
}

ordered_json gains_json(const VerificationReport& v, double n) {
  ordered_json j;
  j["theta0"] = v.gain_theta0;
  j["interferers"] = v.null_gains;
  j["loss"] = n - v.gain_theta0;
  return j;
}

ordered_json angles_json(std::span<const Angle> angles) {
  ordered_json j = ordered_json::array();
  for (const Angle& a : angles) j.push_back(a.degrees());
  return j;
}

template <typename Body>
CommandOutput guarded(Body&& body) {
  CommandOutput out;
  try {
    std::optional<VerificationFailed> failure;
    out.text = body(failure);
    if (failure) {
      out.exit_code = kExitVerificationFailure;
      out.diagnostic = "verification failure: " + failure->what;
    }
  } catch (const InputError& e) {
    out = CommandOutput{kExitInputError, "", std::string("input error: ") + e.what()};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInconsistency) {
      out = CommandOutput{kExitInternalInconsistency, "",
                          std::string("internal inconsistency: ") + e.what()};
    } else {
      out = CommandOutput{kExitInputError, "", std::string("input error: ") + e.what()};
    }
  }
  return out;
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_fixed(*v) : ""; }

double default_oracle_bound(const Scenario& s) {
  const double floor_bound = (s.n() - 1) * s.d_min();
  if (s.k() <= prime_factorize(s.n()).count()) {
    const double aperture = theorem1_apv(s).apv.aperture();
    return std::min(kDefaultGridBound, std::max(floor_bound, aperture) + 0.1);
  }
  return floor_bound + 2.0;
}

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

CommandOutput run_synthesize(const ScenarioConfig& config) {
  return guarded([&](std::optional<VerificationFailed>& failure) {
    const Scenario s = to_scenario(config);
    const double n = s.n();
    const MaDesign ma = design_ma(s);
    const VerificationReport v = verify_ma(ma, s, failure);

    const Apv ula = ula_apv(s.n(), kHalfWavelength);
    const std::optional<ZfResult> zf = design_fpa_zf(s, ula);
    const std::optional<KroneckerResult> kron = design_fpa_kron(s);

    ordered_json r;
    r["scenario"] = {{"n", s.n()},
                     {"theta0_deg", s.theta0().degrees()},
                     {"interferers_deg", angles_json(s.interferers())},
                     {"d_min", s.d_min()},
                     {"mode", mode_name(s.mode())}};
    r["path"] = ma.hybrid ? "hybrid" : "closed-form";
    r["apv_wavelengths"] = ma.apv.positions();
    if (config.lambda_m) {
      ordered_json meters = ordered_json::array();
      for (double x : ma.apv.positions()) meters.push_back(x * *config.lambda_m);
      r["apv_meters"] = meters;
    }
    ordered_json awv = ordered_json::array();
    for (const Complex& w : ma.awv.weights()) {
      awv.push_back({{"magnitude", std::abs(w)}, {"phase_deg", std::arg(w) * 180.0 / kPi}});
    }
    r["awv"] = awv;

    const SynthesisResult& closed = ma.closed_form ? *ma.closed_form : ma.hybrid->positions;
    r["spacings"] = closed.spacings;
    r["q"] = closed.q_values;
    if (ma.hybrid) {
      r["selected_deg"] = angles_json(ma.hybrid->selected);
      r["zero_forced_deg"] = angles_json(ma.hybrid->residual_nulled);
    }
    // Slots index the directions handled by positions.
    r["ordering"] = closed.ordering;

    ordered_json gains;
    gains["ma"] = gains_json(v, n);
    if (zf) {
      const VerificationReport vz = verify_synthesis(ula, zf->awv, s);
      check_consistent(zf->gain_theta0, vz.gain_theta0, "fixed-array zero-forcing");
      gains["fpa_zf"] = gains_json(vz, n);
    } else {
      gains["fpa_zf"] = nullptr;
    }
    if (kron) {
      gains["fpa_kron"] = gains_json(verify_synthesis(ula, kron->awv, s), n);
    } else {
      gains["fpa_kron"] = nullptr;
    }
    r["gains"] = gains;

    const double max_residual =
        v.svo_residuals.empty() ? 0.0
                                : *std::max_element(v.svo_residuals.begin(), v.svo_residuals.end());
    r["verification"] = {{"pass", ma.hybrid ? v.nulls_pass : v.pass},
                         {"max_svo_residual", max_residual},
                         {"min_spacing", v.min_spacing}};
    return r.dump(2) + "\n";
  });
}

CommandOutput run_compare(const ScenarioConfig& config) {
  return guarded([&](std::optional<VerificationFailed>& failure) {
    const Scenario s = to_scenario(config);
    const MaDesign ma = design_ma(s);
    verify_ma(ma, s, failure);

    const Apv ula = ula_apv(s.n(), kHalfWavelength);
    const std::optional<ZfResult> zf = design_fpa_zf(s, ula);
    if (zf) {
      check_consistent(zf->gain_theta0, verify_synthesis(ula, zf->awv, s).gain_theta0,
                       "fixed-array zero-forcing");
    }
    const std::optional<KroneckerResult> kron = design_fpa_kron(s);

    std::vector<Angle> thetas;
    try {
      thetas = angle_grid(Angle(config.sweep.start_deg), config.sweep.stop_deg,
                          config.sweep.step_deg);
    } catch (const Error& e) {
      throw InputError(std::string("sweep: ") + e.what());
    }

    std::string csv = "theta_deg,gain_ma,gain_fpa_zf,gain_fpa_kron\n";
    for (const Angle& t : thetas) {
      std::optional<double> g_zf;
      std::optional<double> g_kron;
      if (zf) g_zf = beam_gain(ula, zf->awv, t);
      if (kron) g_kron = beam_gain(ula, kron->awv, t);
      csv += format_fixed(t.degrees()) + "," + format_fixed(beam_gain(ma.apv, ma.awv, t)) + "," +
             csv_cell(g_zf) + "," + csv_cell(g_kron) + "\n";
    }
    return csv;
  });
}

CommandOutput run_sweep_interferer(const ScenarioConfig& config) {
  return guarded([&](std::optional<VerificationFailed>& failure) {
    ScenarioConfig base = config;
    base.interferers_deg.clear();
    const Scenario template_scenario = to_scenario(base);
    const SweepRange& r = config.theta1_sweep;
    if (!(r.step_deg > 0.0)) throw InputError("theta1 sweep step must be positive");
    if (!(r.start_deg <= r.stop_deg)) throw InputError("theta1 sweep start exceeds stop");

    const double u0 = template_scenario.theta0().cosine();
    const auto count =
        static_cast<long>(std::floor((r.stop_deg - r.start_deg) / r.step_deg + 1e-9)) + 1;
    const Apv ula = ula_apv(template_scenario.n(), kHalfWavelength);

    std::string csv = "theta1_deg,gain_ma,gain_fpa_zf,gain_fpa_kron\n";
    std::size_t rows = 0;
    for (long i = 0; i < count; ++i) {
      Angle theta1(0.0);
      try {
        theta1 = Angle(r.start_deg + static_cast<double>(i) * r.step_deg);
      } catch (const Error& e) {
        throw InputError(std::string("theta1 sweep: ") + e.what());
      }
      if (std::abs(u0 - theta1.cosine()) < kDegenerateDirectionTolerance) continue;

      const Scenario s(template_scenario.n(), template_scenario.theta0(), {theta1},
                       template_scenario.d_min(), template_scenario.mode());
      const MaDesign ma = design_ma(s);
      const VerificationReport v = verify_ma(ma, s, failure);
      std::optional<double> g_zf;
      std::optional<double> g_kron;
      if (const std::optional<ZfResult> zf = design_fpa_zf(s, ula)) {
        const VerificationReport vz = verify_synthesis(ula, zf->awv, s);
        check_consistent(zf->gain_theta0, vz.gain_theta0, "fixed-array zero-forcing");
        g_zf = vz.gain_theta0;
      }
      if (const std::optional<KroneckerResult> kron = design_fpa_kron(s)) {
        g_kron = verify_synthesis(ula, kron->awv, s).gain_theta0;
      }
      csv += format_fixed(theta1.degrees()) + "," + format_fixed(v.gain_theta0) + "," +
             csv_cell(g_zf) + "," + csv_cell(g_kron) + "\n";
      ++rows;
    }
    if (rows == 0) {
      throw InputError("theta1 sweep is empty once directions matching theta0 are excluded");
    }
    return csv;
  });
}

CommandOutput run_oracle(const ScenarioConfig& config) {
  return guarded([&](std::optional<VerificationFailed>&) {
    const Scenario s = to_scenario(config);
    if (s.n() > kMaxGridAntennas) {
      throw InputError("oracle search is exponential in n; n must be <= " +
                       std::to_string(kMaxGridAntennas));
    }
    const double bound = config.oracle_bound ? *config.oracle_bound : default_oracle_bound(s);
    GridSearchReport g = [&] {
      try {
        return grid_min_loss(s.n(), s.theta0(), s.interferers(), bound, config.oracle_step,
                             s.d_min());
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kInconsistency) throw;
        throw InputError(e.what());
      }
    }();

    ordered_json r;
    r["scenario"] = {{"n", s.n()},
                     {"theta0_deg", s.theta0().degrees()},
                     {"interferers_deg", angles_json(s.interferers())},
                     {"d_min", s.d_min()},
                     {"mode", mode_name(s.mode())}};
    r["grid"] = {{"step", g.grid_step},
                 {"bounds", {g.bounds.first, g.bounds.second}},
                 {"evaluated", g.evaluated}};
    r["best_apv"] = g.best_apv.positions();
    r["best_loss"] = g.best_loss;
    if (s.k() <= prime_factorize(s.n()).count()) {
      const SynthesisResult t = theorem1_apv(s);
      r["theorem1"] = {{"apv", t.apv.positions()},
                       {"loss", gain_loss(t.apv, s.theta0(), s.interferers())}};
    } else {
      r["theorem1"] = nullptr;
    }
    return r.dump(2) + "\n";
  });
}

CommandOutput run_factorize(int n) {
  return guarded([&](std::optional<VerificationFailed>&) {
    if (n < 1) throw InputError("n must be a positive integer");
    const Factorization f = prime_factorize(n);
    std::ostringstream os;
    auto join = [&](const std::vector<int>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
      os << "\n";
    };
    os << "n: " << f.n << "\n";
    os << "prime_factor_count: " << f.count() << "\n";
    os << "factors: ";
    join(f.factors);
    os << "offsets: ";
    join(f.offsets);
    os << "index,digits\n";
    for (int i = 1; i <= n; ++i) {
      os << i << ",";
      join(mixed_radix_digits(i, f).digits);
    }
    return os.str();
  });
}

std::string plot_script(const std::string& csv_path, bool interferer_sweep) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel '" << (interferer_sweep ? "undesired direction theta1 (deg)" : "theta (deg)")
     << "'\n"
     << "set ylabel 'beam gain'\n"
     << "plot '" << csv_path << "' using 1:2 with lines, \\\n"
     << "     '' using 1:3 with lines, \\\n"
     << "     '' using 1:4 with lines\n"
     << "pause -1\n";
  return os.str();
}

}  // namespace mabeam::cli
