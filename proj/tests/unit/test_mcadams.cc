// tests/unit/test_mcadams.cc

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
#include <numbers>
#include <random>

#include "pseudovoice/errors.h"
#include "pseudovoice/mcadams.h"
#include "support/synthetic.h"

using namespace pseudovoice;

TEST_CASE("warp matches the scalar oracle exp(alpha ln phi)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20000; ++trial) {
    const double phi =
        testsupport::uniform_in(rng, 1e-6, std::numbers::pi - 1e-9);
    const double alpha = testsupport::uniform_in(rng, 0.05, 1.0);
    const double expected = std::exp(alpha * std::log(phi));
    CHECK(std::abs(warp_angle(phi, alpha) - expected) <= 1e-12);
  }
}

TEST_CASE("frozen warp values") {
  CHECK(warp_angle(0.5, 0.8) == doctest::Approx(0.5743).epsilon(5e-5));
  CHECK(warp_angle(2.0, 0.8) == doctest::Approx(1.7411).epsilon(5e-5));
}

TEST_CASE("phi = 1 is a fixed point and alpha = 1 the identity") {
  for (double alpha : {0.1, 0.5, 0.8, 1.0})
    CHECK(warp_angle(1.0, alpha) == 1.0);
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const double phi =
        testsupport::uniform_in(rng, 1e-6, std::numbers::pi - 1e-9);
    CHECK(warp_angle(phi, 1.0) == phi);
  }
}

TEST_CASE("direction law: sign of the shift is sign(1 - phi) for alpha<1") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 5000; ++trial) {
    const double phi =
        testsupport::uniform_in(rng, 1e-4, std::numbers::pi - 1e-6);
    const double alpha = testsupport::uniform_in(rng, 0.05, 0.999);
    const double shift = warp_angle(phi, alpha) - phi;
    if (phi < 1.0)
      CHECK(shift > 0.0);  // counter-clockwise below 1 rad
    else if (phi > 1.0)
      CHECK(shift < 0.0);
  }
}

TEST_CASE("warp stays inside (0, pi) and preserves ordering") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 5000; ++trial) {
    const double a = testsupport::uniform_in(rng, 1e-5, std::numbers::pi - 1e-7);
    const double b = testsupport::uniform_in(rng, 1e-5, std::numbers::pi - 1e-7);
    const double alpha = testsupport::uniform_in(rng, 0.05, 1.0);
    const double wa = warp_angle(a, alpha);
    const double wb = warp_angle(b, alpha);
    CHECK(wa > 0.0);
    CHECK(wa < std::numbers::pi);
    if (a < b) CHECK(wa < wb);
    if (a > b) CHECK(wa > wb);
  }
}

TEST_CASE("pole-domain inverse: exponent 1/alpha undoes the warp") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20000; ++trial) {
    const double phi =
        testsupport::uniform_in(rng, 1e-4, std::numbers::pi - 1e-6);
    const double alpha = testsupport::uniform_in(rng, 0.3, 1.0);
    const double back = warp_angle(warp_angle(phi, alpha), 1.0 / alpha);
    CHECK(std::abs(back - phi) <= 1e-12);
  }
}

TEST_CASE("warp_angle rejects angles outside (0, pi)") {
  CHECK_THROWS_AS(warp_angle(0.0, 0.8), StructuralError);
  CHECK_THROWS_AS(warp_angle(-0.5, 0.8), StructuralError);
  CHECK_THROWS_AS(warp_angle(std::numbers::pi, 0.8), StructuralError);
  CHECK_THROWS_AS(warp_angle(0.5, 0.0), StructuralError);
}

TEST_CASE("McAdamsCoefficient is gated to (0, 1]") {
  CHECK_THROWS_AS(McAdamsCoefficient(0.0), ConfigError);
  CHECK_THROWS_AS(McAdamsCoefficient(-0.2), ConfigError);
  CHECK_THROWS_AS(McAdamsCoefficient(1.2), ConfigError);
  CHECK(McAdamsCoefficient(1.0).value() == 1.0);
  CHECK(McAdamsCoefficient(0.8).value() == 0.8);
}

namespace {

PoleSet three_pair_set() {
  PoleSet set;
  for (double phi : {0.5, 1.0, 2.0}) {
    set.poles.push_back({0.9, phi});
    set.poles.push_back({0.9, -phi});
  }
  return set;
}

std::vector<double> upper_angles(const PoleSet& set) {
  std::vector<double> angles;
  for (const Pole& pole : set.poles)
    if (pole.angle > 0.0) angles.push_back(pole.angle);
  std::sort(angles.begin(), angles.end());
  return angles;
}

}  // namespace

TEST_CASE("warp_poleset shifts the example angle set") {
  const PoleSet warped = warp_poleset(three_pair_set(), 0.8);
  REQUIRE(warped.poles.size() == 6);
  const std::vector<double> angles = upper_angles(warped);
  CHECK(angles[0] == doctest::Approx(0.5743).epsilon(5e-5));
  CHECK(angles[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(angles[2] == doctest::Approx(1.7411).epsilon(5e-5));
  for (const Pole& pole : warped.poles) CHECK(pole.magnitude == 0.9);
}

TEST_CASE("warp_poleset at alpha = 1 is the identity") {
  const PoleSet input = three_pair_set();
  const PoleSet warped = warp_poleset(input, 1.0);
  CHECK(upper_angles(warped) == upper_angles(input));
}

TEST_CASE("real poles are exempt, conjugate closure preserved") {
  PoleSet set;
  set.poles.push_back({0.5, 0.0});
  set.poles.push_back({0.3, std::numbers::pi});
  set.poles.push_back({0.9, 1.8});
  set.poles.push_back({0.9, -1.8});
  const PoleSet warped = warp_poleset(set, 0.6);
  REQUIRE(warped.poles.size() == 4);

  bool real_half = false;
  bool real_neg = false;
  for (const Pole& pole : warped.poles) {
    if (pole.angle == 0.0) {
      CHECK(pole.magnitude == 0.5);
      real_half = true;
    }
    if (pole.angle == std::numbers::pi) {
      CHECK(pole.magnitude == 0.3);
      real_neg = true;
    }
    if (pole.angle > 0.0 && pole.angle < 3.0) {
      const bool mirrored = std::any_of(
          warped.poles.begin(), warped.poles.end(), [&](const Pole& q) {
            return q.angle == -pole.angle && q.magnitude == pole.magnitude;
          });
      CHECK(mirrored);
    }
  }
  CHECK(real_half);
  CHECK(real_neg);
}

TEST_CASE("warp_poleset flags non-closed input") {
  PoleSet lopsided;
  lopsided.poles.push_back({0.9, 0.7});
  CHECK_THROWS_AS(warp_poleset(lopsided, 0.8), StructuralError);
}

TEST_CASE("angle/frequency map") {
  CHECK(angle_to_hz(1.0, 16000) ==
        doctest::Approx(16000.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
  CHECK(angle_to_hz(1.0, 16000) == doctest::Approx(2546.5).epsilon(2e-5));
  CHECK(angle_to_hz(std::numbers::pi, 16000) == doctest::Approx(8000.0));
  CHECK(angle_to_hz(0.0, 16000) == 0.0);
}
