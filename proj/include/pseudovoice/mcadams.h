// include/pseudovoice/mcadams.h

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

#pragma once

#include "pseudovoice/lpc.h"

namespace pseudovoice {

// Angles within this of the real axis (0 or pi) are treated as real poles
// and exempt from warping.
inline constexpr double kRealPoleAngleThreshold = 1e-8;

// The exponent applied to complex-pole angles.  The anonymiser admits
// (0, 1] only; alpha = 1 is the identity.  Exponents above 1 appear solely
// in the pole-domain inverse warp_angle(phi, 1/alpha), which never goes
// through this type.
class McAdamsCoefficient {
 public:
  explicit McAdamsCoefficient(double alpha);  // ConfigError outside (0, 1]

  double value() const { return alpha_; }

 private:
  double alpha_;
};

// phi^alpha for phi in (0, pi) and alpha > 0.  phi = 1 is a fixed point;
// for alpha < 1 the shift is counter-clockwise below 1 rad and clockwise
// above, and the result stays inside (0, pi).  Throws StructuralError when
// phi is outside the open interval (callers handle real-axis poles
// separately).
double warp_angle(double phi, double alpha);

// Warps the upper-half pole of each conjugate pair to (rho, phi^alpha) and
// constructs its mirror; real-axis poles and all magnitudes pass through
// unchanged.  Output has the same cardinality and stays conjugate-closed.
PoleSet warp_poleset(const PoleSet& poles, double alpha);

// Linear angle-to-frequency map f = phi * sample_rate / (2*pi); pi is the
// Nyquist frequency.
double angle_to_hz(double phi, int sample_rate_hz);

}  // namespace pseudovoice
