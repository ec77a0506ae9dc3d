// SPDX-License-Identifier: Apache-2.0

#include "mabeam/fpa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "mabeam/error.hpp"
#include "mabeam/factorization.hpp"

namespace mabeam {

namespace {

// Smallest |delta| with spacing * (u0 - uk) + delta = p / f (mod 1), p = 1..f-1.
double nulling_phase(int f, double spacing, double u0, double uk) {
  const double s = spacing * (u0 - uk);
  double best = std::numeric_limits<double>::infinity();
  for (int p = 1; p < f; ++p) {
    double delta = static_cast<double>(p) / f - s;
    delta -= std::round(delta);
    if (std::abs(delta) < std::abs(best)) best = delta;
  }
  return best;
}

Awv assemble(const Factorization& fact, const std::vector<CVector>& factors) {
  CVector w(static_cast<std::size_t>(fact.n));
  for (int n = 1; n <= fact.n; ++n) {
    const MixedRadixDigits z = mixed_radix_digits(n, fact);
    Complex v{1.0, 0.0};
    for (std::size_t i = 0; i < factors.size(); ++i) {
      v *= factors[i][static_cast<std::size_t>(z.digits[i])];
    }
    w[static_cast<std::size_t>(n - 1)] = v;
  }
  return Awv::normalized(std::move(w));
}

}  // namespace

Apv ula_apv(int n, double spacing) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ULA needs n >= 1");
  if (!(spacing > 0.0)) throw Error(ErrorCode::kInvalidArgument, "ULA spacing must be positive");
  std::vector<double> positions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) positions[static_cast<std::size_t>(i)] = i * spacing;
  return Apv(std::move(positions));
}

std::vector<CVector> kronecker_factor_weights(const KroneckerPlan& plan, Angle theta0) {
  const double u0 = theta0.cosine();
  std::vector<CVector> out;
  out.reserve(plan.factor_lengths.size());
  for (std::size_t i = 0; i < plan.factor_lengths.size(); ++i) {
    const int f = plan.factor_lengths[i];
    const double step = plan.factor_spacings[i] * u0 + plan.phase_offsets[i];
    const double scale = 1.0 / std::sqrt(static_cast<double>(f));
    CVector w(static_cast<std::size_t>(f));
    for (int m = 0; m < f; ++m) w[static_cast<std::size_t>(m)] = scale * phase_factor(m * step);
    out.push_back(std::move(w));
  }
  return out;
}

KroneckerResult kronecker_weights_for_assignment(int n, Angle theta0,
                                                 std::span<const Angle> interferers,
                                                 std::span<const std::size_t> slots) {
  const Factorization fact = prime_factorize(n);
  if (interferers.size() > fact.count()) {
    throw Error(ErrorCode::kFeasibilityExceeded,
                "Kronecker beamformer nulls at most I_N = " + std::to_string(fact.count()) +
                    " directions for N = " + std::to_string(n));
  }
  if (slots.size() != interferers.size()) {
    throw Error(ErrorCode::kLengthMismatch, "one factor slot per interferer required");
  }

  KroneckerPlan plan;
  plan.factor_lengths = fact.factors;
  plan.assignment.assign(fact.count(), std::nullopt);
  plan.phase_offsets.assign(fact.count(), 0.0);
  for (std::size_t i = 0; i < fact.count(); ++i) {
    plan.factor_spacings.push_back(fact.offsets[i] * kHalfWavelength);
  }

  const double u0 = theta0.cosine();
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const std::size_t slot = slots[k];
    if (slot >= fact.count() || plan.assignment[slot]) {
      throw Error(ErrorCode::kInvalidArgument, "factor slots must be distinct and < I_N");
    }
    plan.assignment[slot] = k;
    plan.phase_offsets[slot] = nulling_phase(fact.factors[slot], plan.factor_spacings[slot], u0,
                                             interferers[k].cosine());
  }

  Awv awv = assemble(fact, kronecker_factor_weights(plan, theta0));
  return KroneckerResult{std::move(awv), std::move(plan)};
}

KroneckerResult kronecker_analog_weights(int n, Angle theta0, std::span<const Angle> interferers) {
  const Factorization fact = prime_factorize(n);
  const std::size_t k = interferers.size();
  if (k > fact.count()) {
    throw Error(ErrorCode::kFeasibilityExceeded,
                "Kronecker beamformer nulls at most I_N = " + std::to_string(fact.count()) +
                    " directions for N = " + std::to_string(n));
  }

  // The gain at theta0 factorizes, so each candidate only needs per-factor gains.
  const double u0 = theta0.cosine();
  auto factor_gain = [&](std::size_t slot, std::size_t interferer) {
    const int f = fact.factors[slot];
    const double delta =
        nulling_phase(f, fact.offsets[slot] * kHalfWavelength, u0, interferers[interferer].cosine());
    Complex acc{0.0, 0.0};
    for (int m = 0; m < f; ++m) acc += phase_factor(m * delta);
    return std::norm(acc) / f;
  };

  std::vector<std::size_t> perm(fact.count());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best_slots(perm.begin(), perm.begin() + static_cast<long>(k));
  double best_gain = -1.0;
  do {
    double gain = 1.0;
    for (std::size_t i = 0; i < k; ++i) gain *= factor_gain(perm[i], i);
    if (gain > best_gain) {
      best_gain = gain;
      best_slots.assign(perm.begin(), perm.begin() + static_cast<long>(k));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return kronecker_weights_for_assignment(n, theta0, interferers, best_slots);
}

}  // namespace mabeam
