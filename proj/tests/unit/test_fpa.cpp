// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mabeam/mabeam.hpp"
#include "support/reference.hpp"

using namespace mabeam;

namespace {

std::vector<Angle> angles(std::initializer_list<double> deg) {
  return to_angles(std::vector<double>(deg));
}

}  // namespace

TEST_CASE("ula_apv") {
  const Apv x = ula_apv(4, kHalfWavelength);
  for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == 0.5 * static_cast<double>(i));
  CHECK(ula_apv(1, 0.5).size() == 1);
  CHECK_THROWS_AS(ula_apv(0, 0.5), Error);
  CHECK_THROWS_AS(ula_apv(3, 0.0), Error);
}

TEST_CASE("two-antenna analog null") {
  // Either minimal phase offset (+-1/4 cycle) gives |1 + j|^2 / 2 = 1.
  const KroneckerResult r = kronecker_analog_weights(2, Angle(90), angles({60}));
  const Apv x = ula_apv(2, kHalfWavelength);
  CHECK(beam_gain(x, r.awv, Angle(90)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beam_gain(x, r.awv, Angle(60)) <= 1e-12);
}

TEST_CASE("eight-antenna analog baselines") {
  const Apv x = ula_apv(8, kHalfWavelength);
  SUBCASE("10, 55, 160") {
    const auto in = angles({10, 55, 160});
    const KroneckerResult r = kronecker_analog_weights(8, Angle(90), in);
    const double g = beam_gain(x, r.awv, Angle(90));
    CHECK(g == doctest::Approx(1.0).epsilon(0.1));
    for (const Angle& a : in) CHECK(beam_gain(x, r.awv, a) <= 1e-9 * 8);
    for (const Complex& c : r.awv.weights()) CHECK(std::abs(std::abs(c) - 1.0 / std::sqrt(8.0)) < 1e-14);

    // Exhaustive check of the assignment choice.
    std::vector<std::size_t> slots{0, 1, 2};
    double best = 0.0;
    do {
      const KroneckerResult c = kronecker_weights_for_assignment(8, Angle(90), in, slots);
      best = std::max(best, beam_gain(x, c.awv, Angle(90)));
    } while (std::next_permutation(slots.begin(), slots.end()));
    CHECK(g == doctest::Approx(best).epsilon(1e-12));
  }
  SUBCASE("30, 82, 100") {
    const auto in = angles({30, 82, 100});
    const KroneckerResult r = kronecker_analog_weights(8, Angle(90), in);
    CHECK(beam_gain(x, r.awv, Angle(90)) < zf_weights(x, Angle(90), in).gain_theta0);
    for (const Angle& a : in) CHECK(beam_gain(x, r.awv, a) <= 1e-9 * 8);
  }
}

TEST_CASE("weights are the tensor product of the factor beamformers") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(0.0, 179.9);
  for (int n : {4, 6, 8, 12, 18, 30}) {
    const double theta0 = ang(rng);
    const std::size_t k = prime_factorize(n).count();
    const auto in = to_angles(ref::separated_angles(rng, theta0, k, 2.0));
    const KroneckerResult r = kronecker_analog_weights(n, Angle(theta0), in);
    const std::vector<CVector> parts = kronecker_factor_weights(r.plan, Angle(theta0));
    REQUIRE(parts.size() == k);
    // The first factor varies fastest along the array.
    std::vector<ref::C> w(parts[0].begin(), parts[0].end());
    for (std::size_t i = 1; i < parts.size(); ++i) {
      w = ref::kron(std::vector<ref::C>(parts[i].begin(), parts[i].end()), w);
    }
    const double scale = std::sqrt(ref::dot_h(w, w).real());
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(r.awv[i] - w[i] / scale) < 1e-12);
  }
}

TEST_CASE("Kronecker error paths") {
  CHECK_THROWS_AS(kronecker_analog_weights(8, Angle(90), angles({10, 30, 50, 120})), Error);
  const auto in = angles({10, 55});
  const std::vector<std::size_t> dup{1, 1};
  CHECK_THROWS_AS(kronecker_weights_for_assignment(8, Angle(90), in, dup), Error);
  const std::vector<std::size_t> short_slots{0};
  CHECK_THROWS_AS(kronecker_weights_for_assignment(8, Angle(90), in, short_slots), Error);
}
