// SPDX-License-Identifier: Apache-2.0
//
// Linear-array primitives: directions, scenarios, antenna positions and
// weights, far-field steering vectors and beam gains.
//
// Positions are always expressed in wavelengths, so the steering phase of
// antenna n toward direction theta is 2*pi*x_n*cos(theta).

#ifndef MABEAM_ARRAY_HPP
#define MABEAM_ARRAY_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mabeam {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

/// Minimum |cos(theta0) - cos(theta_k)| below which a direction cannot be nulled
/// without also nulling the desired signal.
inline constexpr double kDegenerateDirectionTolerance = 1e-6;
/// Two interferers closer than this in direction cosine are duplicates.
inline constexpr double kDuplicateInterfererTolerance = 1e-9;
/// Default minimum inter-antenna distance in wavelengths.
inline constexpr double kDefaultMinSpacing = 0.5;

/// Steering angle measured from the array axis, in degrees on [0, 180).
class Angle {
 public:
  explicit Angle(double degrees);

  double degrees() const noexcept { return degrees_; }
  double radians() const noexcept;
  /// Direction cosine u = cos(theta); exact at 90 degrees.
  double cosine() const noexcept;

  friend bool operator==(const Angle&, const Angle&) = default;
  friend auto operator<=>(const Angle&, const Angle&) = default;

 private:
  double degrees_;
};

std::vector<Angle> to_angles(std::span<const double> degrees);

/// How the integer search in the closed-form position construction is bounded.
///  - kTableConsistent: q >= 1 for every nulling spacing.
///  - kStrict: q >= 0, the literal minimum integer.
enum class SynthesisMode { kTableConsistent, kStrict };

/// One null-steering problem instance.
class Scenario {
 public:
  Scenario(int n, Angle theta0, std::vector<Angle> interferers,
           double d_min = kDefaultMinSpacing,
           SynthesisMode mode = SynthesisMode::kTableConsistent,
           double degenerate_tolerance = kDegenerateDirectionTolerance);

  int n() const noexcept { return n_; }
  Angle theta0() const noexcept { return theta0_; }
  std::span<const Angle> interferers() const noexcept { return interferers_; }
  std::size_t k() const noexcept { return interferers_.size(); }
  double d_min() const noexcept { return d_min_; }
  SynthesisMode mode() const noexcept { return mode_; }

 private:
  int n_;
  Angle theta0_;
  std::vector<Angle> interferers_;
  double d_min_;
  SynthesisMode mode_;
};

/// Antenna positions vector: strictly increasing positions in wavelengths.
class Apv {
 public:
  explicit Apv(std::vector<double> positions);

  std::size_t size() const noexcept { return positions_.size(); }
  double operator[](std::size_t i) const { return positions_[i]; }
  std::span<const double> positions() const noexcept { return positions_; }

  double aperture() const noexcept { return positions_.back() - positions_.front(); }
  /// Smallest distance between any two antennas (infinity for one antenna).
  double min_spacing() const noexcept;

  Apv shifted(double offset) const;
  /// Same geometry translated so that the first antenna sits at 0.
  Apv normalized() const { return shifted(-positions_.front()); }

 private:
  std::vector<double> positions_;
};

/// Antenna weights vector with unit 2-norm.
class Awv {
 public:
  /// Requires ||weights|| = 1 within 1e-12.
  explicit Awv(CVector weights);
  /// Scales `weights` to unit norm; throws kZeroProjection for a zero vector.
  static Awv normalized(CVector weights);

  std::size_t size() const noexcept { return weights_.size(); }
  const Complex& operator[](std::size_t i) const { return weights_[i]; }
  std::span<const Complex> weights() const noexcept { return weights_; }

 private:
  CVector weights_;
};

/// a^H b.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> v);

/// Unit-modulus phase factor exp(j*2*pi*cycles) with the integer part of
/// `cycles` removed before the trigonometric evaluation.
Complex phase_factor(double cycles);

/// a(x, theta): entry n is exp(j*2*pi*x_n*cos(theta)).
CVector steering_vector(const Apv& apv, Angle theta);

/// |a(x, theta)^H w|^2. Throws kLengthMismatch when sizes differ.
double beam_gain(const Apv& apv, const Awv& awv, Angle theta);

/// |a(x, theta_k)^H a(x, theta0)| for every interferer.
std::vector<double> svo_residuals(const Apv& apv, Angle theta0,
                                  std::span<const Angle> interferers);

struct PatternSample {
  Angle theta;
  double gain;
};

/// Grid start, start + step, ... strictly below min(stop_degrees, 180).
/// Contains ceil((stop - start) / step) points when stop <= 180.
std::vector<Angle> angle_grid(Angle start, double stop_degrees, double step_degrees);

std::vector<PatternSample> pattern_sweep(const Apv& apv, const Awv& awv, Angle start,
                                         double stop_degrees, double step_degrees);

}  // namespace mabeam

#endif  // MABEAM_ARRAY_HPP
