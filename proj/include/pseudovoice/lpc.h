// include/pseudovoice/lpc.h

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

#include <span>
#include <vector>

namespace pseudovoice {

// Frames whose zero-lag autocorrelation falls below this are treated as
// silence and passed through unmodelled.
inline constexpr double kSilenceThresholdR0 = 1e-12;

// Roots with |Im| at or below this are classified as real during pole
// extraction and are exempt from angle warping downstream.
inline constexpr double kRealPoleImagThreshold = 1e-8;

// All-pole model of one analysis frame: A(z) = 1 + sum_k a_k z^-k, plus the
// prediction residual that excites 1/A(z) at resynthesis.
struct LpcModel {
  std::vector<double> coeffs;    // a_1..a_p
  int order = 0;
  std::vector<double> residual;  // same length as the analysed frame
  bool passthrough = false;      // near-silent frame, model left as identity
};

// One pole in polar form; angle lies in (-pi, pi] and real poles sit at
// exactly 0 or pi.
struct Pole {
  double magnitude = 0.0;
  double angle = 0.0;
};

// Roots of A(z).  Conjugate-closed whenever produced by this module or by
// warp_poleset(); pole count equals the model order (roots at the origin
// included).
struct PoleSet {
  std::vector<Pole> poles;

  int order() const { return static_cast<int>(poles.size()); }
};

struct LevinsonResult {
  std::vector<double> coeffs;       // a_1..a_p
  std::vector<double> reflections;  // k_1..k_p, each in (-1, 1)
  double prediction_error = 0.0;
};

// Solves the normal equations for autocorrelation sequence r[0..order].
// Throws NumericError when a reflection coefficient leaves (-1, 1), which
// cannot happen for positive-definite input.
LevinsonResult levinson_durbin(std::span<const double> autocorr, int order);

// Autocorrelation-method LPC fit of one windowed frame.  r0 receives a
// 1e-9 relative diagonal loading; frames with r0 below kSilenceThresholdR0
// come back as flagged pass-through models.  Requires frame.size() > order.
LpcModel fit_lpc(std::span<const double> frame, int order);

// All p roots of z^p + a_1 z^{p-1} + ... + a_p via companion-matrix
// eigenvalues, symmetrised into exact conjugate pairs.
PoleSet poles_from_coeffs(std::span<const double> coeffs);
PoleSet poles_from_coeffs(const LpcModel& model);

// Expands prod_i (z - p_i) back to coefficients a_1..a_p.  Throws
// StructuralError when the input is not conjugate-closed and NumericError
// when the expansion leaves an imaginary residue above 1e-9.
std::vector<double> coeffs_from_poles(const PoleSet& poles);

// out[n] = residual[n] - sum_k a_k out[n-k], zero initial state.  Throws
// NumericError naming the first sample index at which the filter diverges.
std::vector<double> synthesize(std::span<const double> coeffs,
                               std::span<const double> residual);

}  // namespace pseudovoice
