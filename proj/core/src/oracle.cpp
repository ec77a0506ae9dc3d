// SPDX-License-Identifier: Apache-2.0

#include "mabeam/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "mabeam/error.hpp"

namespace mabeam {

namespace {

// Relative norm below which a Gram-Schmidt residual is treated as dependent.
constexpr double kDependentTolerance = 1e-10;
// Relative Cholesky pivot below which the lattice search falls back to Gram-Schmidt.
constexpr double kSingularPivot = 1e-6;
// With n <= 4 the Gram route only ever sees K <= 3 and at most 6 distinct sums.
constexpr std::size_t kMaxLatticeNulls = kMaxGridAntennas - 1;
constexpr std::size_t kMaxLatticeSums = kMaxLatticeNulls * (kMaxLatticeNulls + 1) / 2;

// Gram-Schmidt on the interference vectors, then ||P a0||^2. `entry(j, m)` is
// element m of direction j (j = 0 for theta0). At most n basis vectors exist,
// so fixed storage suffices when n <= Cap.
template <std::size_t Cap, typename Get>
double mgs_loss_fixed(std::size_t n, std::size_t k, Get&& entry) {
  std::array<std::array<Complex, Cap>, Cap> basis;
  std::size_t rank = 0;
  std::array<Complex, Cap> v;
  const double tol = kDependentTolerance * std::sqrt(static_cast<double>(n));
  for (std::size_t j = 1; j <= k && rank < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) v[m] = entry(j, m);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t b = 0; b < rank; ++b) {
        Complex c{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) c += std::conj(basis[b][m]) * v[m];
        for (std::size_t m = 0; m < n; ++m) v[m] -= c * basis[b][m];
      }
    }
    double norm = 0.0;
    for (std::size_t m = 0; m < n; ++m) norm += std::norm(v[m]);
    norm = std::sqrt(norm);
    if (norm > tol) {
      for (std::size_t m = 0; m < n; ++m) basis[rank][m] = v[m] / norm;
      ++rank;
    }
  }
  double loss = 0.0;
  for (std::size_t b = 0; b < rank; ++b) {
    Complex c{0.0, 0.0};
    for (std::size_t m = 0; m < n; ++m) c += std::conj(basis[b][m]) * entry(0, m);
    loss += std::norm(c);
  }
  return loss;
}

// Gain loss b^H G^-1 b from a K x K Gram matrix with diagonal n, given its
// strict upper triangle. Returns false when a Cholesky pivot is too small for
// the quadratic form to be trusted.
template <std::size_t Cap>
bool cholesky_loss(std::size_t k, double n, const std::array<Complex, Cap>& b,
                   const std::array<std::array<Complex, Cap>, Cap>& upper, double& loss) {
  std::array<std::array<Complex, Cap>, Cap> r{};
  std::array<Complex, Cap> y{};
  loss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double diag = n;
    for (std::size_t p = 0; p < i; ++p) diag -= std::norm(r[p][i]);
    if (!(diag > kSingularPivot * n)) return false;
    const double rii = std::sqrt(diag);
    r[i][i] = rii;
    for (std::size_t j = i + 1; j < k; ++j) {
      Complex v = upper[i][j];
      for (std::size_t p = 0; p < i; ++p) v -= std::conj(r[p][i]) * r[p][j];
      r[i][j] = v / rii;
    }
    Complex yi = b[i];
    for (std::size_t p = 0; p < i; ++p) yi -= std::conj(r[p][i]) * y[p];
    y[i] = yi / rii;
    loss += std::norm(y[i]);
  }
  return true;
}

struct LatticeBest {
  double loss = std::numeric_limits<double>::infinity();
  std::array<long, kMaxGridAntennas> index{};
  std::uint64_t evaluated = 0;
};

}  // namespace

double projection_loss(const Apv& apv, Angle theta0, std::span<const Angle> interferers) {
  const std::size_t n = apv.size();
  std::vector<CVector> sv;
  sv.push_back(steering_vector(apv, theta0));
  for (const Angle& t : interferers) sv.push_back(steering_vector(apv, t));
  auto entry = [&](std::size_t j, std::size_t m) { return sv[j][m]; };
  if (n <= kMaxGridAntennas) {
    return mgs_loss_fixed<kMaxGridAntennas>(n, interferers.size(), entry);
  }
  if (n <= 64) return mgs_loss_fixed<64>(n, interferers.size(), entry);
  throw Error(ErrorCode::kInvalidArgument, "projection_loss supports up to 64 antennas");
}

GridSearchReport grid_min_loss(int n, Angle theta0, std::span<const Angle> interferers,
                               double upper_bound, double step, double d_min, unsigned threads) {
  if (n < 1 || n > kMaxGridAntennas) {
    throw Error(ErrorCode::kInvalidArgument,
                "exhaustive search supports 1 <= n <= " + std::to_string(kMaxGridAntennas));
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  }
  if (!(d_min >= 0.0) || !std::isfinite(upper_bound)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid grid bounds");
  }

  const long top = static_cast<long>(std::floor(upper_bound / step + 1e-9));
  const long gap = std::max(1L, static_cast<long>(std::ceil(d_min / step - 1e-9)));
  if (top < 0 || (n > 1 && top < (n - 1) * gap)) {
    throw Error(ErrorCode::kEmptyGrid, "no lattice point satisfies the spacing and bound");
  }

  const std::size_t k = interferers.size();
  const std::size_t dirs = k + 1;
  const auto table_size = static_cast<std::size_t>(top) + 1;
  auto lattice_table = [&](double u) {
    CVector t(table_size);
    for (std::size_t i = 0; i < table_size; ++i) {
      t[i] = phase_factor(static_cast<double>(i) * step * u);
    }
    return t;
  };
  auto cosine = [&](std::size_t j) {
    return j == 0 ? theta0.cosine() : interferers[j - 1].cosine();
  };

  // steer[j][i] = exp(j 2 pi (i step) u_j), j = 0 for theta0.
  std::vector<CVector> steer;
  for (std::size_t j = 0; j < dirs; ++j) steer.push_back(lattice_table(cosine(j)));

  // Difference tables: sum d < K gives b_d = a_d^H a0; the remaining sums give
  // the strict upper triangle of the Gram matrix, row-major.
  const auto un = static_cast<std::size_t>(n);
  const bool gram_route = k > 0 && k < un;
  std::vector<CVector> diff;
  std::vector<std::pair<std::size_t, std::size_t>> pair_of;
  if (gram_route) {
    for (std::size_t a = 1; a <= k; ++a) diff.push_back(lattice_table(cosine(0) - cosine(a)));
    for (std::size_t a = 1; a <= k; ++a) {
      for (std::size_t c = a + 1; c <= k; ++c) {
        diff.push_back(lattice_table(cosine(c) - cosine(a)));
        pair_of.emplace_back(a - 1, c - 1);
      }
    }
  }
  const std::size_t sums = diff.size();

  using Sums = std::array<Complex, kMaxLatticeSums>;
  const double dn = static_cast<double>(n);
  auto point_loss = [&](const Sums& s, const std::array<long, kMaxGridAntennas>& idx) {
    if (k == 0) return 0.0;
    if (gram_route) {
      if (k == 1) return std::norm(s[0]) / dn;
      if (k == 2) {
        // Explicit 2 x 2 inverse of [[n, g], [conj(g), n]].
        const Complex g = s[2];
        const double det = dn * dn - std::norm(g);
        if (det > kSingularPivot * dn * dn) {
          return (dn * (std::norm(s[0]) + std::norm(s[1])) -
                  2.0 * (std::conj(s[0]) * g * s[1]).real()) /
                 det;
        }
      } else {
        std::array<Complex, kMaxLatticeNulls> b{};
        std::array<std::array<Complex, kMaxLatticeNulls>, kMaxLatticeNulls> upper{};
        for (std::size_t d = 0; d < k; ++d) b[d] = s[d];
        for (std::size_t p = 0; p < pair_of.size(); ++p) {
          upper[pair_of[p].first][pair_of[p].second] = s[k + p];
        }
        double loss = 0.0;
        if (cholesky_loss(k, dn, b, upper, loss)) return loss;
      }
    }
    return mgs_loss_fixed<kMaxGridAntennas>(un, k, [&](std::size_t j, std::size_t m) {
      return steer[j][static_cast<std::size_t>(idx[m])];
    });
  };

  // Scans every lattice point whose second coordinate lies in [lo, hi], keeping
  // per-level partial sums so each point costs one table lookup per sum.
  auto scan = [&](long lo, long hi) {
    LatticeBest best;
    std::array<long, kMaxGridAntennas> idx{};
    std::array<Sums, kMaxGridAntennas> partial{};
    for (std::size_t d = 0; d < sums; ++d) partial[0][d] = Complex(1.0, 0.0);
    auto extend = [&](std::size_t m) {
      const auto i = static_cast<std::size_t>(idx[m]);
      for (std::size_t d = 0; d < sums; ++d) partial[m][d] = partial[m - 1][d] + diff[d][i];
    };
    auto consider = [&](std::size_t last) {
      const double loss = point_loss(partial[last], idx);
      ++best.evaluated;
      if (loss < best.loss) {
        best.loss = loss;
        best.index = idx;
      }
    };
    if (n == 1) {
      consider(0);
      return best;
    }
    for (idx[1] = lo; idx[1] <= hi; ++idx[1]) {
      extend(1);
      if (n == 2) {
        consider(1);
        continue;
      }
      for (idx[2] = idx[1] + gap; idx[2] <= top - (n - 3) * gap; ++idx[2]) {
        extend(2);
        if (n == 3) {
          consider(2);
          continue;
        }
        for (idx[3] = idx[2] + gap; idx[3] <= top; ++idx[3]) {
          extend(3);
          consider(3);
        }
      }
    }
    return best;
  };

  const long first_lo = n == 1 ? 0 : gap;
  const long first_hi = n == 1 ? 0 : top - (n - 2) * gap;
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<long>(static_cast<long>(workers), std::max(1L, first_hi - first_lo + 1)));

  std::vector<LatticeBest> partial(workers);
  if (workers == 1) {
    partial[0] = scan(first_lo, first_hi);
  } else {
    // Later coordinates shrink as the second one grows; interleaving would break
    // the lexicographic tie order, so split into contiguous blocks of equal work.
    std::vector<long> edges{first_lo};
    const auto weight = [&](long i) {
      const double free = static_cast<double>(top - i - (n - 2) * gap + 1);
      return n == 2 ? 1.0 : (n == 3 ? free : free * free / 2.0);
    };
    double total = 0.0;
    for (long i = first_lo; i <= first_hi; ++i) total += weight(i);
    double acc = 0.0;
    for (long i = first_lo; i <= first_hi && edges.size() < workers; ++i) {
      acc += weight(i);
      if (acc >= total * static_cast<double>(edges.size()) / workers) edges.push_back(i + 1);
    }
    while (edges.size() < workers) edges.push_back(first_hi + 1);
    edges.push_back(first_hi + 1);

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        if (edges[w] <= edges[w + 1] - 1) partial[w] = scan(edges[w], edges[w + 1] - 1);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  LatticeBest best;
  for (const LatticeBest& p : partial) {
    best.evaluated += p.evaluated;
    if (p.loss < best.loss) {
      best.loss = p.loss;
      best.index = p.index;
    }
  }

  std::vector<double> positions(un);
  for (std::size_t m = 0; m < un; ++m) positions[m] = static_cast<double>(best.index[m]) * step;
  return GridSearchReport{Apv(std::move(positions)), best.loss, step, {0.0, upper_bound},
                          best.evaluated};
}

VerificationReport verify_synthesis(const Apv& apv, const Scenario& scenario) {
  CVector w = steering_vector(apv, scenario.theta0());
  const double scale = 1.0 / std::sqrt(static_cast<double>(w.size()));
  for (Complex& c : w) c *= scale;
  return verify_synthesis(apv, Awv::normalized(std::move(w)), scenario);
}

VerificationReport verify_synthesis(const Apv& apv, const Awv& awv, const Scenario& scenario) {
  if (apv.size() != static_cast<std::size_t>(scenario.n()) || awv.size() != apv.size()) {
    throw Error(ErrorCode::kLengthMismatch, "array size differs from the scenario");
  }
  const double n = static_cast<double>(scenario.n());
  VerificationReport r;
  r.svo_residuals = svo_residuals(apv, scenario.theta0(), scenario.interferers());
  r.min_spacing = apv.min_spacing();
  r.gain_theta0 = beam_gain(apv, awv, scenario.theta0());
  for (const Angle& t : scenario.interferers()) r.null_gains.push_back(beam_gain(apv, awv, t));

  const bool spacing_ok = r.min_spacing >= scenario.d_min() - 1e-12;
  const bool nulls_ok = std::all_of(r.null_gains.begin(), r.null_gains.end(),
                                    [&](double g) { return g <= 1e-9 * n; });
  const bool svo_ok = std::all_of(r.svo_residuals.begin(), r.svo_residuals.end(),
                                  [&](double v) { return v <= 1e-8 * n; });
  r.pass = svo_ok && spacing_ok && r.gain_theta0 >= n - 1e-6 && nulls_ok;
  r.nulls_pass = spacing_ok && nulls_ok && r.gain_theta0 > 1e-6;
  return r;
}

}  // namespace mabeam
