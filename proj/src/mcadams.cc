// src/mcadams.cc

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

#include "pseudovoice/mcadams.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "pseudovoice/errors.h"

namespace pseudovoice {

McAdamsCoefficient::McAdamsCoefficient(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw ConfigError("McAdams coefficient must lie in (0, 1], got " +
                      std::to_string(alpha));
}

double warp_angle(double phi, double alpha) {
  if (!(phi > 0.0) || !(phi < std::numbers::pi))
    throw StructuralError("warp_angle: angle " + std::to_string(phi) +
                          " outside (0, pi); real-axis poles are exempt");
  if (!(alpha > 0.0))
    throw StructuralError("warp_angle: exponent must be positive");
  return std::pow(phi, alpha);
}

namespace {

bool on_real_axis(const Pole& pole) {
  return std::abs(pole.angle) <= kRealPoleAngleThreshold ||
         std::abs(pole.angle) >= std::numbers::pi - kRealPoleAngleThreshold;
}

}  // namespace

PoleSet warp_poleset(const PoleSet& poles, double alpha) {
  std::vector<Pole> upper;
  std::vector<Pole> lower;
  PoleSet out;
  out.poles.reserve(poles.poles.size());
  for (const Pole& pole : poles.poles) {
    if (on_real_axis(pole))
      out.poles.push_back(pole);  // real-pole exemption
    else if (pole.angle > 0.0)
      upper.push_back(pole);
    else
      lower.push_back(pole);
  }

  std::sort(upper.begin(), upper.end(), [](const Pole& a, const Pole& b) {
    return a.angle != b.angle ? a.angle < b.angle
                              : a.magnitude < b.magnitude;
  });
  // mirror-aligned order: descending angle, ascending magnitude
  std::sort(lower.begin(), lower.end(), [](const Pole& a, const Pole& b) {
    return a.angle != b.angle ? a.angle > b.angle
                              : a.magnitude < b.magnitude;
  });
  if (upper.size() != lower.size())
    throw StructuralError("warp_poleset: input was not conjugate-closed");
  for (std::size_t i = 0; i < upper.size(); ++i)
    if (std::abs(upper[i].angle + lower[i].angle) > 1e-12 ||
        std::abs(upper[i].magnitude - lower[i].magnitude) > 1e-12)
      throw StructuralError("warp_poleset: input was not conjugate-closed");

  // Warp the upper-half pole of each pair and construct its mirror; never
  // recompute the mirror independently.
  for (const Pole& pole : upper) {
    const double warped = warp_angle(pole.angle, alpha);
    out.poles.push_back({pole.magnitude, warped});
    out.poles.push_back({pole.magnitude, -warped});
  }
  return out;
}

double angle_to_hz(double phi, int sample_rate_hz) {
  return phi * static_cast<double>(sample_rate_hz) /
         (2.0 * std::numbers::pi);
}

}  // namespace pseudovoice
