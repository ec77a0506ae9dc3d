// SPDX-License-Identifier: Apache-2.0
//
// Brute-force checks that do not share code paths with the synthesis modules.

#ifndef MABEAM_ORACLE_HPP
#define MABEAM_ORACLE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mabeam/array.hpp"

namespace mabeam {

inline constexpr int kMaxGridAntennas = 4;
inline constexpr double kDefaultGridStep = 1e-3;
inline constexpr double kDefaultGridBound = 30.0;

struct GridSearchReport {
  Apv best_apv;
  double best_loss;
  double grid_step;
  std::pair<double, double> bounds;
  std::uint64_t evaluated;
};

/// Zero-forcing gain loss computed by modified Gram-Schmidt on the interference
/// steering vectors: ||P a0||^2 with P the projector onto their span.
double projection_loss(const Apv& apv, Angle theta0, std::span<const Angle> interferers);

/// Exhaustive search over 0 = x_1 < x_2 < ... < x_n <= upper_bound on the
/// lattice step * Z with consecutive gaps >= d_min, minimizing the gain loss.
/// Ties resolve to the lexicographically smallest position vector. `threads` = 0
/// uses the hardware concurrency.
GridSearchReport grid_min_loss(int n, Angle theta0, std::span<const Angle> interferers,
                               double upper_bound, double step, double d_min,
                               unsigned threads = 0);

struct VerificationReport {
  std::vector<double> svo_residuals;
  double min_spacing;
  double gain_theta0;
  std::vector<double> null_gains;
  /// Full gain with every null: residuals <= 1e-8 N, spacing >= d_min - 1e-12,
  /// gain >= N - 1e-6, null gains <= 1e-9 N.
  bool pass;
  /// Nulls and spacing hold and some gain remains, without demanding full gain.
  bool nulls_pass;
};

/// Recomputes diagnostics from steering vectors only, using the matched filter
/// a(x, theta0) / sqrt(N) as weights.
VerificationReport verify_synthesis(const Apv& apv, const Scenario& scenario);

/// Same with caller-supplied weights.
VerificationReport verify_synthesis(const Apv& apv, const Awv& awv, const Scenario& scenario);

}  // namespace mabeam

#endif  // MABEAM_ORACLE_HPP
