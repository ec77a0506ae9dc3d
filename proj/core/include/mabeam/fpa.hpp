// SPDX-License-Identifier: Apache-2.0
//
// Fixed-position baselines: the uniform linear array and a constant-modulus
// analog beamformer built as a Kronecker product of per-factor sub-beamformers.
//
// A half-wavelength ULA with N = f_1 ... f_I antennas factors exactly into I
// sub-arrays of f_i elements at spacing D_i = g_i / 2, so its steering vector is
// the tensor product of the sub-array steering vectors and the beam gain of a
// tensor-product weight is the product of the per-factor gains. Each nulling
// factor applies a progressive phase that places a zero of its own f_i-point
// sum on the assigned interferer; the other factors conjugate-match theta0.

#ifndef MABEAM_FPA_HPP
#define MABEAM_FPA_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mabeam/array.hpp"

namespace mabeam {

inline constexpr double kHalfWavelength = 0.5;

/// Positions 0, spacing, 2 spacing, ...
Apv ula_apv(int n, double spacing);

struct KroneckerPlan {
  std::vector<int> factor_lengths;
  std::vector<double> factor_spacings;
  /// assignment[slot] = interferer index nulled by that factor, or nullopt for a
  /// factor matched to theta0.
  std::vector<std::optional<std::size_t>> assignment;
  /// Extra per-element phase increment of each factor, in cycles.
  std::vector<double> phase_offsets;
};

struct KroneckerResult {
  Awv awv;
  KroneckerPlan plan;
};

/// Weights for the given interferer-to-factor assignment: interferer k is
/// nulled by factor slots[k]. Slots must be distinct and < I_N.
KroneckerResult kronecker_weights_for_assignment(int n, Angle theta0,
                                                 std::span<const Angle> interferers,
                                                 std::span<const std::size_t> slots);

/// Best assignment by exhaustive search over injective interferer-to-factor
/// maps, maximizing the gain at theta0. Throws kFeasibilityExceeded for K > I_N.
KroneckerResult kronecker_analog_weights(int n, Angle theta0, std::span<const Angle> interferers);

/// Per-factor weight vectors of a plan, in factor order.
std::vector<CVector> kronecker_factor_weights(const KroneckerPlan& plan, Angle theta0);

}  // namespace mabeam

#endif  // MABEAM_FPA_HPP
