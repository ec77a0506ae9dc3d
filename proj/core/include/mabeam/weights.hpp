// SPDX-License-Identifier: Apache-2.0
//
// Beamforming weights for a given antenna geometry: zero-forcing toward a set
// of undesired directions, the gain it costs, the constant-modulus matched
// filter, and the hybrid design used when there are more null directions than
// the closed-form position construction handles.

#ifndef MABEAM_WEIGHTS_HPP
#define MABEAM_WEIGHTS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mabeam/array.hpp"
#include "mabeam/synthesis.hpp"

namespace mabeam {

/// Dense column-major complex matrix.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  CVector data;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  Complex& operator()(std::size_t r, std::size_t c) { return data[c * rows + r]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data[c * rows + r]; }
};

/// Gram conditions above this are treated as singular.
inline constexpr double kMaxGramCondition = 1e12;
/// Unnormalized projections shorter than this mean theta0 lies in the interference span.
inline constexpr double kZeroProjectionNorm = 1e-10;
/// Tolerance between the quadratic-form and achieved-gain evaluations of the loss.
inline constexpr double kLossCrossCheckTolerance = 1e-8;

struct GramSystem {
  ComplexMatrix steering;  // N x K, column k = a(x, theta_k)
  ComplexMatrix gram;      // K x K, A^H A
  double condition = 1.0;  // 2-norm condition number of gram
};

GramSystem build_gram_system(const Apv& apv, std::span<const Angle> interferers);

struct ZfResult {
  Awv awv;
  double gain_loss;    // L(x) = a0^H A (A^H A)^-1 A^H a0
  double gain_theta0;  // N - L(x)
};

/// Normalized projection of a(x, theta0) onto the orthogonal complement of the
/// interference steering vectors. With no interferers this is the matched filter.
///
/// Throws kFeasibilityExceeded for K >= N, kSingularGram when the Gram matrix is
/// numerically singular, kZeroProjection when theta0 lies in the interference
/// span, and kInconsistency when the two loss evaluations disagree.
ZfResult zf_weights(const Apv& apv, Angle theta0, std::span<const Angle> interferers);

/// The array gain sacrificed by zero-forcing, in [0, N].
double gain_loss(const Apv& apv, Angle theta0, std::span<const Angle> interferers);

/// a(x, theta0) / sqrt(N); every entry has modulus 1/sqrt(N).
Awv matched_filter_weights(const Apv& apv, Angle theta0);

/// Returns interferer indices from most to least important. The first I_N are
/// handled by antenna positions, the rest by zero-forcing.
using InterferenceRanking =
    std::function<std::vector<std::size_t>(Angle theta0, std::span<const Angle> interferers)>;

struct HybridResult {
  Apv apv;
  ZfResult zf;
  SynthesisResult positions;           // closed-form design for the selected directions
  std::vector<Angle> selected;         // nulled through orthogonality
  std::vector<Angle> residual_nulled;  // nulled only through zero-forcing
};

/// Closed-form positions for the I_N highest-ranked interferers, then
/// zero-forcing against all K directions. The default ranking is
/// order_directions (largest direction-cosine separation first).
HybridResult hybrid_weights(const Scenario& scenario, const InterferenceRanking& ranking = {});

}  // namespace mabeam

#endif  // MABEAM_WEIGHTS_HPP
