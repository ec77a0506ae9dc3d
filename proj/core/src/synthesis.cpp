// SPDX-License-Identifier: Apache-2.0

#include "mabeam/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "mabeam/error.hpp"

namespace mabeam {

namespace {

double separation(Angle theta0, Angle theta) {
  const double delta = std::abs(theta0.cosine() - theta.cosine());
  if (delta < kDegenerateDirectionTolerance) {
    throw Error(ErrorCode::kDegenerateDirection,
                "direction " + std::to_string(theta.degrees()) +
                    " deg is indistinguishable from the desired direction " +
                    std::to_string(theta0.degrees()) + " deg");
  }
  return delta;
}

int min_q(SynthesisMode mode) { return mode == SynthesisMode::kTableConsistent ? 1 : 0; }

// Smallest q >= q_floor with (q + frac) / delta >= lower.
int smallest_admissible_q(double lower, double delta, double frac, int q_floor) {
  int q = std::max(q_floor, static_cast<int>(std::ceil(lower * delta - frac)));
  while ((q + frac) / delta < lower) ++q;
  while (q - 1 >= q_floor && (q - 1 + frac) / delta >= lower) --q;
  return q;
}

}  // namespace

std::vector<std::size_t> order_directions(Angle theta0, std::span<const Angle> interferers) {
  std::vector<std::size_t> idx(interferers.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const double u0 = theta0.cosine();
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double sa = std::abs(u0 - interferers[a].cosine());
    const double sb = std::abs(u0 - interferers[b].cosine());
    if (sa != sb) return sa > sb;
    return interferers[a].degrees() < interferers[b].degrees();
  });
  return idx;
}

SpacingVector spacing_vector(Angle theta0, std::span<const Angle> ordered,
                             const Factorization& fact, double d_min, SynthesisMode mode) {
  if (ordered.size() > fact.count()) {
    throw Error(ErrorCode::kFeasibilityExceeded,
                std::to_string(ordered.size()) + " null directions exceed the " +
                    std::to_string(fact.count()) + " prime factors of N = " +
                    std::to_string(fact.n));
  }
  SpacingVector out;
  double span_so_far = 0.0;  // sum_{j<i} (f_j - 1) d_j
  for (std::size_t i = 0; i < fact.count(); ++i) {
    const double lower = span_so_far + d_min;
    // With no spacing floor, a free slot still needs to clear the previous span.
    double d = d_min > 0.0 ? lower : span_so_far + kDefaultMinSpacing;
    if (i < ordered.size()) {
      const double delta = separation(theta0, ordered[i]);
      const double frac = 1.0 / fact.factors[i];
      int q = smallest_admissible_q(lower, delta, frac, min_q(mode));
      while (!((q + frac) / delta > span_so_far)) ++q;
      d = (q + frac) / delta;
      out.q.push_back(q);
    }
    out.d.push_back(d);
    span_so_far += (fact.factors[i] - 1) * d;
  }
  return out;
}

SynthesisResult theorem1_apv(const Scenario& scenario,
                             std::optional<std::vector<std::size_t>> ordering) {
  const Factorization fact = prime_factorize(scenario.n());
  const std::span<const Angle> interferers = scenario.interferers();
  if (interferers.size() > fact.count()) {
    throw Error(ErrorCode::kFeasibilityExceeded,
                "K = " + std::to_string(interferers.size()) + " exceeds I_N = " +
                    std::to_string(fact.count()) + " for N = " + std::to_string(scenario.n()) +
                    "; use the hybrid position/zero-forcing design");
  }

  std::vector<std::size_t> order =
      ordering ? std::move(*ordering) : order_directions(scenario.theta0(), interferers);
  {
    std::vector<std::size_t> sorted(order);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expect(interferers.size());
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    if (sorted != expect) {
      throw Error(ErrorCode::kInvalidArgument, "ordering is not a permutation of the interferers");
    }
  }
  std::vector<Angle> ordered;
  ordered.reserve(order.size());
  for (std::size_t i : order) ordered.push_back(interferers[i]);

  SpacingVector sv =
      spacing_vector(scenario.theta0(), ordered, fact, scenario.d_min(), scenario.mode());

  std::vector<double> positions(static_cast<std::size_t>(scenario.n()));
  for (int n = 1; n <= scenario.n(); ++n) {
    const MixedRadixDigits z = mixed_radix_digits(n, fact);
    double x = 0.0;
    for (std::size_t i = 0; i < fact.count(); ++i) x += z.digits[i] * sv.d[i];
    positions[static_cast<std::size_t>(n - 1)] = x;
  }
  Apv apv(std::move(positions));

  if (apv.min_spacing() < scenario.d_min() - 1e-12) {
    throw Error(ErrorCode::kInconsistency, "synthesized positions violate the minimum spacing");
  }
  std::vector<double> residuals = svo_residuals(apv, scenario.theta0(), interferers);
  const double bound = 1e-8 * scenario.n();
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    if (residuals[k] > bound) {
      throw Error(ErrorCode::kInconsistency,
                  "steering-vector orthogonality residual " + std::to_string(residuals[k]) +
                      " for interferer " + std::to_string(k));
    }
  }

  return SynthesisResult{std::move(apv), std::move(sv.d), std::move(sv.q), std::move(order),
                         std::move(residuals)};
}

Apv lemma1_apv(int n, Angle theta0, Angle theta1, double d_min, SynthesisMode mode) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "a single-null uniform array needs n >= 2");
  const double delta = separation(theta0, theta1);
  const double frac = 1.0 / n;
  const int q = smallest_admissible_q(d_min, delta, frac, min_q(mode));
  const double d = (q + frac) / delta;
  std::vector<double> positions(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) positions[static_cast<std::size_t>(i)] = i * d;
  return Apv(std::move(positions));
}

Apv replicate_subarray(const Apv& base, int n2, double d) {
  if (n2 < 1) throw Error(ErrorCode::kInvalidArgument, "replication count must be >= 1");
  if (n2 > 1 && !(d > base.aperture())) {
    throw Error(ErrorCode::kOverlap, "replication distance does not clear the base aperture");
  }
  std::vector<double> out;
  out.reserve(base.size() * static_cast<std::size_t>(n2));
  for (int t = 0; t < n2; ++t) {
    for (double x : base.positions()) out.push_back(x + t * d);
  }
  return Apv(std::move(out));
}

}  // namespace mabeam
