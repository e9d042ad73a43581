// tests/unit/test_lpc.cc

// Copyright 2026  Pseudovoice Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "pseudovoice/errors.h"
#include "pseudovoice/lpc.h"
#include "support/synthetic.h"

using namespace pseudovoice;

namespace {

// Random stable pole layout: well-separated conjugate pairs plus a few real
// poles, expanded to coefficients by the test-local real-factor oracle.
struct StableModel {
  std::vector<std::pair<double, double>> pairs;
  std::vector<double> reals;
  std::vector<double> coeffs;
};

StableModel random_stable_model(std::mt19937_64& rng, int order) {
  StableModel model;
  const int n_pairs = order / 2 - (order % 2 == 0 ? 1 : 0);
  const int n_reals = order - 2 * n_pairs;
  std::vector<double> angles;
  while (static_cast<int>(angles.size()) < n_pairs) {
    const double candidate = testsupport::uniform_in(rng, 0.08, 3.05);
    if (std::all_of(angles.begin(), angles.end(), [&](double a) {
          return std::abs(a - candidate) > 0.05;
        }))
      angles.push_back(candidate);
  }
  for (double a : angles)
    model.pairs.emplace_back(testsupport::uniform_in(rng, 0.3, 0.97), a);
  for (int i = 0; i < n_reals; ++i)
    model.reals.push_back(testsupport::uniform_in(rng, -0.9, 0.9));
  model.coeffs = testsupport::expand_poles_real(model.pairs, model.reals);
  return model;
}

std::vector<Pole> sorted_poles(const PoleSet& set) {
  std::vector<Pole> poles = set.poles;
  std::sort(poles.begin(), poles.end(), [](const Pole& a, const Pole& b) {
    return a.angle != b.angle ? a.angle < b.angle
                              : a.magnitude < b.magnitude;
  });
  return poles;
}

}  // namespace

TEST_CASE("levinson solves the first-order case a1 = -r1/r0") {
  const double r[] = {1.0, 0.5};
  const LevinsonResult result = levinson_durbin(r, 1);
  REQUIRE(result.coeffs.size() == 1);
  CHECK(result.coeffs[0] == doctest::Approx(-0.5).epsilon(1e-12));
  REQUIRE(result.reflections.size() == 1);
  CHECK(result.reflections[0] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("levinson reflections stay inside (-1, 1) for real frames") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> noise = testsupport::white_noise(320, rng);
    std::vector<double> r(21);
    for (std::size_t lag = 0; lag <= 20; ++lag) {
      r[lag] = 0.0;
      for (std::size_t i = 0; i + lag < noise.size(); ++i)
        r[lag] += noise[i] * noise[i + lag];
    }
    r[0] *= 1.0 + 1e-9;
    const LevinsonResult result = levinson_durbin(r, 20);
    for (double k : result.reflections) CHECK(std::abs(k) < 1.0);
  }
}

TEST_CASE("fit_lpc order-1 oracle on a frame with r1/r0 = 1/2") {
  const double frame[] = {1.0, 1.0};
  const LpcModel model = fit_lpc(frame, 1);
  CHECK(model.coeffs[0] == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK_FALSE(model.passthrough);
}

TEST_CASE("fit_lpc recovers AR(2) generating coefficients") {
  // x[n] = 1.7554 x[n-1] - 0.9025 x[n-2] + e[n]; rho = 0.95, theta = 0.3927
  const std::vector<double> truth{-1.7554, 0.9025};
  std::mt19937_64 rng(11);
  const std::vector<double> x =
      testsupport::ar_process(truth, testsupport::white_noise(16000, rng));
  const LpcModel model = fit_lpc(x, 2);
  CHECK(std::abs(model.coeffs[0] - truth[0]) < 0.02);
  CHECK(std::abs(model.coeffs[1] - truth[1]) < 0.02);
}

TEST_CASE("fit_lpc passes silent frames through") {
  const std::vector<double> zeros(320, 0.0);
  const LpcModel model = fit_lpc(zeros, 20);
  CHECK(model.passthrough);
  CHECK(model.coeffs == std::vector<double>(20, 0.0));
  CHECK(model.residual == zeros);
}

TEST_CASE("fit_lpc validates its inputs") {
  const std::vector<double> frame(10, 0.1);
  CHECK_THROWS_AS(fit_lpc(frame, 10), ConfigError);
  CHECK_THROWS_AS(fit_lpc(frame, 0), ConfigError);
  std::vector<double> bad(320, 0.0);
  bad[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(fit_lpc(bad, 20), NumericError);
}

TEST_CASE("residual filtered back through 1/A reproduces the frame") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const StableModel truth = random_stable_model(rng, 8);
    std::vector<double> frame = testsupport::ar_process(
        truth.coeffs, testsupport::white_noise(320, rng, 0.1));
    const LpcModel model = fit_lpc(frame, 12);
    const std::vector<double> back =
        synthesize(model.coeffs, model.residual);
    REQUIRE(back.size() == frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i)
      CHECK(std::abs(back[i] - frame[i]) <= 1e-9);
  }
}

TEST_CASE("synthesize degenerate paths") {
  // all-zero coefficients return the residual verbatim
  const std::vector<double> residual{0.5, -0.25, 0.125};
  const std::vector<double> zeros(4, 0.0);
  CHECK(synthesize(zeros, residual) == residual);

  // AR(2) impulse response starts 1, 1.7554
  const std::vector<double> coeffs{-1.7554, 0.9025};
  std::vector<double> impulse(8, 0.0);
  impulse[0] = 1.0;
  const std::vector<double> h = synthesize(coeffs, impulse);
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == doctest::Approx(1.7554));

  // unstable filters must fail loudly, naming the sample
  const std::vector<double> runaway{-4.0};
  std::vector<double> ones(3000, 1.0);
  CHECK_THROWS_AS(synthesize(runaway, ones), NumericError);
}

TEST_CASE("poles_from_coeffs factors the AR(2) quadratic") {
  const std::vector<double> coeffs{-1.7554, 0.9025};
  const PoleSet set = poles_from_coeffs(coeffs);
  REQUIRE(set.order() == 2);
  const std::vector<Pole> poles = sorted_poles(set);
  CHECK(poles[0].magnitude == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(poles[1].magnitude == doctest::Approx(0.95).epsilon(1e-9));
  // acos(1.7554 / 1.9) from the quadratic, about 0.3927
  const double expected = std::acos(1.7554 / 1.9);
  CHECK(poles[1].angle == doctest::Approx(expected).epsilon(1e-9));
  CHECK(poles[0].angle == doctest::Approx(-expected).epsilon(1e-9));
}

TEST_CASE("poles_from_coeffs degenerate and real cases") {
  // identity model: all roots at the origin
  const std::vector<double> zeros(20, 0.0);
  const PoleSet origin = poles_from_coeffs(zeros);
  REQUIRE(origin.order() == 20);
  for (const Pole& pole : origin.poles) CHECK(pole.magnitude <= 1e-12);

  // single real pole at 0.5
  const std::vector<double> one{-0.5};
  const PoleSet real_pole = poles_from_coeffs(one);
  REQUIRE(real_pole.order() == 1);
  CHECK(real_pole.poles[0].magnitude == doctest::Approx(0.5));
  CHECK(real_pole.poles[0].angle == 0.0);

  std::vector<double> bad{1.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(poles_from_coeffs(bad), NumericError);
}

TEST_CASE("poles_from_coeffs output is conjugate-closed exactly") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const StableModel model = random_stable_model(rng, 20);
    const PoleSet set = poles_from_coeffs(model.coeffs);
    REQUIRE(set.order() == 20);
    for (const Pole& pole : set.poles) {
      if (pole.angle == 0.0 || pole.angle == std::numbers::pi) continue;
      const bool mirrored =
          std::any_of(set.poles.begin(), set.poles.end(), [&](const Pole& q) {
            return q.magnitude == pole.magnitude && q.angle == -pole.angle;
          });
      CHECK(mirrored);
    }
  }
}

TEST_CASE("coeffs_from_poles expands a conjugate pair to the quadratic") {
  PoleSet set;
  const double rho = 0.95;
  const double phi = 0.3927;
  set.poles.push_back({rho, phi});
  set.poles.push_back({rho, -phi});
  const std::vector<double> coeffs = coeffs_from_poles(set);
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[0] == doctest::Approx(-2.0 * rho * std::cos(phi)).epsilon(1e-12));
  CHECK(coeffs[1] == doctest::Approx(rho * rho).epsilon(1e-12));
}

TEST_CASE("coeffs_from_poles rejects a broken pole set") {
  PoleSet set;
  set.poles.push_back({0.9, 0.7});  // missing its mirror
  CHECK_THROWS_AS(coeffs_from_poles(set), StructuralError);

  PoleSet empty;
  CHECK(coeffs_from_poles(empty).empty());
}

TEST_CASE("root/coefficient round trips at order 20") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const StableModel model = random_stable_model(rng, 20);

    // coeffs -> poles -> coeffs
    const PoleSet set = poles_from_coeffs(model.coeffs);
    const std::vector<double> back = coeffs_from_poles(set);
    REQUIRE(back.size() == model.coeffs.size());
    for (std::size_t i = 0; i < back.size(); ++i)
      CHECK(std::abs(back[i] - model.coeffs[i]) <= 1e-6);

    // poles -> coeffs -> poles
    const PoleSet again = poles_from_coeffs(back);
    const std::vector<Pole> a = sorted_poles(set);
    const std::vector<Pole> b = sorted_poles(again);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i].magnitude - b[i].magnitude) <= 1e-6);
      CHECK(std::abs(a[i].angle - b[i].angle) <= 1e-6);
    }
  }
}
