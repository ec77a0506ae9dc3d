// SPDX-License-Identifier: Apache-2.0

#include "mabeam/weights.hpp"

#include <Eigen/Dense>
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

using EMatrix = Eigen::MatrixXcd;
using EVector = Eigen::VectorXcd;

EMatrix to_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EMatrix>(m.data.data(), static_cast<Eigen::Index>(m.rows),
                                   static_cast<Eigen::Index>(m.cols));
}

EVector to_eigen(const CVector& v) {
  return Eigen::Map<const EVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct Projection {
  double loss;
  CVector unnormalized;  // w_x = (I - A (A^H A)^-1 A^H) a0
};

Projection project_out(const Apv& apv, Angle theta0, std::span<const Angle> interferers) {
  const std::size_t n = apv.size();
  const std::size_t k = interferers.size();
  if (k >= n) {
    throw Error(ErrorCode::kFeasibilityExceeded,
                "zero-forcing " + std::to_string(k) + " directions needs more than " +
                    std::to_string(n) + " antennas");
  }

  const GramSystem gs = build_gram_system(apv, interferers);
  if (!(gs.condition <= kMaxGramCondition)) {
    throw Error(ErrorCode::kSingularGram,
                "interference Gram matrix condition " + std::to_string(gs.condition) +
                    " exceeds " + std::to_string(kMaxGramCondition));
  }

  // The Gram check above guards the problem; the projection itself runs on an
  // orthonormal basis of the interference span, which avoids squaring the
  // conditioning of A.
  const EMatrix a = to_eigen(gs.steering);
  const EVector a0 = to_eigen(steering_vector(apv, theta0));
  const Eigen::HouseholderQR<EMatrix> qr(a);
  const EMatrix q = qr.householderQ() * EMatrix::Identity(a.rows(), a.cols());
  const EVector y = q.adjoint() * a0;
  EVector w = a0 - q * y;
  w -= q * (q.adjoint() * w);
  const double loss = std::clamp(y.squaredNorm(), 0.0, static_cast<double>(n));

  return Projection{loss, CVector(w.data(), w.data() + w.size())};
}

}  // namespace

GramSystem build_gram_system(const Apv& apv, std::span<const Angle> interferers) {
  const std::size_t n = apv.size();
  const std::size_t k = interferers.size();
  GramSystem gs;
  gs.steering = ComplexMatrix(n, k);
  for (std::size_t c = 0; c < k; ++c) {
    const CVector col = steering_vector(apv, interferers[c]);
    std::copy(col.begin(), col.end(), gs.steering.data.begin() + static_cast<long>(c * n));
  }

  gs.gram = ComplexMatrix(k, k);
  const std::span<const Complex> all(gs.steering.data);
  for (std::size_t i = 0; i < k; ++i) {
    gs.gram(i, i) = Complex(static_cast<double>(n), 0.0);
    for (std::size_t j = i + 1; j < k; ++j) {
      const Complex v = inner(all.subspan(i * n, n), all.subspan(j * n, n));
      gs.gram(i, j) = v;
      gs.gram(j, i) = std::conj(v);
    }
  }

  if (k == 0) {
    gs.condition = 1.0;
    return gs;
  }
  const Eigen::SelfAdjointEigenSolver<EMatrix> eig(to_eigen(gs.gram), Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  gs.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return gs;
}

ZfResult zf_weights(const Apv& apv, Angle theta0, std::span<const Angle> interferers) {
  const double n = static_cast<double>(apv.size());
  if (interferers.empty()) {
    return ZfResult{matched_filter_weights(apv, theta0), 0.0, n};
  }

  Projection p = project_out(apv, theta0, interferers);
  if (std::sqrt(norm2(p.unnormalized)) < kZeroProjectionNorm) {
    throw Error(ErrorCode::kZeroProjection,
                "desired steering vector lies in the span of the undesired ones");
  }
  Awv awv = Awv::normalized(std::move(p.unnormalized));

  const double achieved = beam_gain(apv, awv, theta0);
  if (std::abs((n - achieved) - p.loss) > kLossCrossCheckTolerance) {
    throw Error(ErrorCode::kInconsistency,
                "gain loss " + std::to_string(p.loss) + " disagrees with achieved gain " +
                    std::to_string(achieved));
  }
  return ZfResult{std::move(awv), p.loss, n - p.loss};
}

double gain_loss(const Apv& apv, Angle theta0, std::span<const Angle> interferers) {
  if (interferers.empty()) return 0.0;
  return project_out(apv, theta0, interferers).loss;
}

Awv matched_filter_weights(const Apv& apv, Angle theta0) {
  CVector w = steering_vector(apv, theta0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(w.size()));
  for (Complex& c : w) c *= scale;
  return Awv::normalized(std::move(w));
}

HybridResult hybrid_weights(const Scenario& scenario, const InterferenceRanking& ranking) {
  const std::span<const Angle> interferers = scenario.interferers();
  const std::size_t k = interferers.size();
  if (k >= static_cast<std::size_t>(scenario.n())) {
    throw Error(ErrorCode::kFeasibilityExceeded,
                "K = " + std::to_string(k) + " null directions need more than N = " +
                    std::to_string(scenario.n()) + " antennas");
  }

  std::vector<std::size_t> rank = ranking ? ranking(scenario.theta0(), interferers)
                                          : order_directions(scenario.theta0(), interferers);
  {
    std::vector<std::size_t> sorted(rank);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expect(k);
    std::iota(expect.begin(), expect.end(), std::size_t{0});
    if (sorted != expect) {
      throw Error(ErrorCode::kInvalidArgument, "interference ranking is not a permutation");
    }
  }

  const std::size_t budget = std::min(k, prime_factorize(scenario.n()).count());
  std::vector<Angle> selected;
  std::vector<Angle> residual;
  for (std::size_t i = 0; i < k; ++i) {
    (i < budget ? selected : residual).push_back(interferers[rank[i]]);
  }

  const Scenario sub(scenario.n(), scenario.theta0(), selected, scenario.d_min(), scenario.mode());
  SynthesisResult positions = theorem1_apv(sub);
  Apv apv = positions.apv;

  ZfResult zf = residual.empty()
                    ? ZfResult{matched_filter_weights(apv, scenario.theta0()), 0.0,
                               static_cast<double>(scenario.n())}
                    : zf_weights(apv, scenario.theta0(), interferers);

  return HybridResult{std::move(apv), std::move(zf), std::move(positions), std::move(selected),
                      std::move(residual)};
}

}  // namespace mabeam
