// SPDX-License-Identifier: Apache-2.0
//
// Closed-form antenna position synthesis for full array gain toward theta0
// with exact nulls toward up to I_N undesired directions, where I_N is the
// number of prime factors of the array size.
//
// Antenna n sits at dot(z_n, d): z_n are the mixed-radix digits of n and d
// holds one spacing per prime factor. A nulling spacing d_i places f_i
// copies of the sub-array built so far so that their phase progression
// toward theta_i sums to zero, which nulls theta_i independently of every
// other factor.

#ifndef MABEAM_SYNTHESIS_HPP
#define MABEAM_SYNTHESIS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mabeam/array.hpp"
#include "mabeam/factorization.hpp"

namespace mabeam {

struct SpacingVector {
  std::vector<double> d;  // one spacing per prime factor, wavelengths
  std::vector<int> q;     // integer chosen for each nulling spacing
};

struct SynthesisResult {
  Apv apv;
  std::vector<double> spacings;
  std::vector<int> q_values;
  /// ordering[slot] = index into the scenario's interferer list.
  std::vector<std::size_t> ordering;
  /// |a(x, theta_k)^H a(x, theta0)| in the scenario's interferer order.
  std::vector<double> residuals;
};

/// Interferer indices sorted by descending |cos(theta0) - cos(theta_k)|, ties
/// broken by ascending angle.
std::vector<std::size_t> order_directions(Angle theta0, std::span<const Angle> interferers);

/// Per-factor spacings. Slot i < K nulls ordered[i] with
/// d_i = (q_i + 1/f_i) / |cos(theta0) - cos(theta_i)| for the smallest admissible
/// q_i keeping d_i >= sum_{j<i} (f_j - 1) d_j + d_min; the remaining slots take
/// that lower bound directly.
SpacingVector spacing_vector(Angle theta0, std::span<const Angle> ordered,
                             const Factorization& fact, double d_min, SynthesisMode mode);

/// Throws kFeasibilityExceeded when K > I_N and kDegenerateDirection for
/// directions that cannot be separated from theta0. `ordering` overrides the
/// default slot assignment and must be a permutation of 0..K-1.
SynthesisResult theorem1_apv(const Scenario& scenario,
                             std::optional<std::vector<std::size_t>> ordering = std::nullopt);

/// Uniform array x_n = (n-1) d, d = (q + 1/n) / |cos(theta0) - cos(theta1)|,
/// nulling a single undesired direction.
Apv lemma1_apv(int n, Angle theta0, Angle theta1, double d_min, SynthesisMode mode);

/// [base, base + d, ..., base + (n2 - 1) d]. Requires d > aperture of base.
Apv replicate_subarray(const Apv& base, int n2, double d);

}  // namespace mabeam

#endif  // MABEAM_SYNTHESIS_HPP
