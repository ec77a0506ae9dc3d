// SPDX-License-Identifier: Apache-2.0

#include "mabeam/array.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "mabeam/error.hpp"

namespace mabeam {

namespace {

std::string describe(double degrees) {
  std::ostringstream os;
  os << degrees << " deg";
  return os.str();
}

}  // namespace

Angle::Angle(double degrees) : degrees_(degrees) {
  if (!std::isfinite(degrees) || degrees < 0.0 || degrees >= 180.0) {
    throw Error(ErrorCode::kOutOfRange,
                "steering angle " + describe(degrees) + " outside [0, 180)");
  }
}

double Angle::radians() const noexcept { return degrees_ * kPi / 180.0; }

double Angle::cosine() const noexcept {
  if (degrees_ == 90.0) return 0.0;
  if (degrees_ == 0.0) return 1.0;
  return std::cos(radians());
}

std::vector<Angle> to_angles(std::span<const double> degrees) {
  std::vector<Angle> out;
  out.reserve(degrees.size());
  for (double d : degrees) out.emplace_back(d);
  return out;
}

Scenario::Scenario(int n, Angle theta0, std::vector<Angle> interferers, double d_min,
                   SynthesisMode mode, double degenerate_tolerance)
    : n_(n), theta0_(theta0), interferers_(std::move(interferers)), d_min_(d_min), mode_(mode) {
  if (n_ < 1) throw Error(ErrorCode::kInvalidArgument, "number of antennas must be >= 1");
  if (!std::isfinite(d_min_) || d_min_ < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "minimum spacing must be a finite value >= 0");
  }
  if (!interferers_.empty() && n_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "null steering needs at least 2 antennas");
  }
  const double u0 = theta0_.cosine();
  for (const Angle& t : interferers_) {
    if (std::abs(u0 - t.cosine()) < degenerate_tolerance) {
      throw Error(ErrorCode::kDegenerateDirection,
                  "undesired direction " + describe(t.degrees()) +
                      " coincides with the desired direction " + describe(theta0_.degrees()) +
                      " and cannot be nulled by beamforming");
    }
  }
  for (std::size_t i = 0; i < interferers_.size(); ++i) {
    for (std::size_t j = i + 1; j < interferers_.size(); ++j) {
      if (std::abs(interferers_[i].cosine() - interferers_[j].cosine()) <
          kDuplicateInterfererTolerance) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate undesired direction " + describe(interferers_[j].degrees()));
      }
    }
  }
}

Apv::Apv(std::vector<double> positions) : positions_(std::move(positions)) {
  if (positions_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty position vector");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite antenna position");
    }
    if (i > 0 && !(positions_[i] > positions_[i - 1])) {
      throw Error(ErrorCode::kOverlap, "antenna positions must be strictly increasing");
    }
  }
}

double Apv::min_spacing() const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < positions_.size(); ++i) {
    best = std::min(best, positions_[i] - positions_[i - 1]);
  }
  return best;
}

Apv Apv::shifted(double offset) const {
  std::vector<double> out(positions_);
  for (double& x : out) x += offset;
  return Apv(std::move(out));
}

Awv::Awv(CVector weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty weight vector");
  const double norm = std::sqrt(norm2(weights_));
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "weight vector must have unit 2-norm");
  }
}

Awv Awv::normalized(CVector weights) {
  const double norm = std::sqrt(norm2(weights));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kZeroProjection, "cannot normalize a zero weight vector");
  }
  for (Complex& w : weights) w /= norm;
  return Awv(std::move(weights));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "inner product of vectors of different length");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm2(std::span<const Complex> v) {
  double acc = 0.0;
  for (const Complex& c : v) acc += std::norm(c);
  return acc;
}

Complex phase_factor(double cycles) {
  const double frac = cycles - std::round(cycles);
  return std::polar(1.0, 2.0 * kPi * frac);
}

CVector steering_vector(const Apv& apv, Angle theta) {
  const double u = theta.cosine();
  CVector out;
  out.reserve(apv.size());
  for (double x : apv.positions()) out.push_back(phase_factor(x * u));
  return out;
}

double beam_gain(const Apv& apv, const Awv& awv, Angle theta) {
  if (apv.size() != awv.size()) {
    throw Error(ErrorCode::kLengthMismatch, "position and weight vectors differ in length");
  }
  return std::norm(inner(steering_vector(apv, theta), awv.weights()));
}

std::vector<double> svo_residuals(const Apv& apv, Angle theta0,
                                  std::span<const Angle> interferers) {
  const CVector a0 = steering_vector(apv, theta0);
  std::vector<double> out;
  out.reserve(interferers.size());
  for (const Angle& t : interferers) out.push_back(std::abs(inner(steering_vector(apv, t), a0)));
  return out;
}

std::vector<Angle> angle_grid(Angle start, double stop_degrees, double step_degrees) {
  if (!(step_degrees > 0.0) || !std::isfinite(step_degrees)) {
    throw Error(ErrorCode::kInvalidArgument, "sweep step must be positive");
  }
  if (!(start.degrees() < stop_degrees)) {
    throw Error(ErrorCode::kEmptyGrid, "sweep start must lie below sweep stop");
  }
  const double stop = std::min(stop_degrees, 180.0);
  const auto count =
      static_cast<std::size_t>(std::ceil((stop - start.degrees()) / step_degrees - 1e-9));
  std::vector<Angle> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double deg = start.degrees() + static_cast<double>(i) * step_degrees;
    if (deg >= stop) break;
    grid.emplace_back(deg);
  }
  if (grid.empty()) throw Error(ErrorCode::kEmptyGrid, "sweep grid has no points");
  return grid;
}

std::vector<PatternSample> pattern_sweep(const Apv& apv, const Awv& awv, Angle start,
                                         double stop_degrees, double step_degrees) {
  const std::vector<Angle> grid = angle_grid(start, stop_degrees, step_degrees);
  std::vector<PatternSample> out;
  out.reserve(grid.size());
  for (const Angle& theta : grid) out.push_back({theta, beam_gain(apv, awv, theta)});
  return out;
}

}  // namespace mabeam
