// src/lpc.cc

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

#include "pseudovoice/lpc.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "pseudovoice/errors.h"
#include "pseudovoice/kernels.h"

namespace pseudovoice {

namespace {

constexpr double kDiagonalLoading = 1e-9;
constexpr double kImagResidueLimit = 1e-9;

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

Pole pole_from_root(const std::complex<double>& root) {
  // Near-real roots snap onto the axis so downstream angle checks are exact.
  if (std::abs(root.imag()) <= kRealPoleImagThreshold)
    return {std::abs(root.real()),
            root.real() < 0.0 ? std::numbers::pi : 0.0};
  return {std::abs(root), std::arg(root)};
}

// Two Newton steps against the original monic polynomial sharpen each
// eigenvalue root from solver precision down to a few ulp, which keeps the
// root -> coefficient round trip tight enough for the identity transform.
std::complex<double> polish_root(std::span<const double> coeffs,
                                 std::complex<double> root) {
  const int p = static_cast<int>(coeffs.size());
  auto value_of = [&](const std::complex<double>& z) {
    std::complex<double> value = 1.0;
    for (int i = 0; i < p; ++i)
      value = value * z + coeffs[static_cast<std::size_t>(i)];
    return value;
  };
  std::complex<double> best = root;
  double best_abs = std::abs(value_of(best));
  for (int step = 0; step < 2; ++step) {
    std::complex<double> value = 1.0;
    std::complex<double> derivative = 0.0;
    for (int i = 0; i < p; ++i) {
      derivative = derivative * best + value;
      value = value * best + coeffs[static_cast<std::size_t>(i)];
    }
    if (derivative == std::complex<double>(0.0)) break;
    const std::complex<double> candidate = best - value / derivative;
    const double candidate_abs = std::abs(value_of(candidate));
    if (!(candidate_abs < best_abs)) break;
    best = candidate;
    best_abs = candidate_abs;
  }
  return best;
}

}  // namespace

LevinsonResult levinson_durbin(std::span<const double> autocorr, int order) {
  if (order < 0 || autocorr.size() < static_cast<std::size_t>(order) + 1)
    throw ConfigError("levinson_durbin: need autocorrelation lags 0.." +
                      std::to_string(order));

  LevinsonResult result;
  result.coeffs.assign(static_cast<std::size_t>(order), 0.0);
  result.reflections.reserve(static_cast<std::size_t>(order));
  double error = autocorr[0];

  std::vector<double> a(result.coeffs);
  for (int m = 1; m <= order; ++m) {
    double acc = autocorr[m];
    for (int i = 1; i < m; ++i) acc += a[i - 1] * autocorr[m - i];
    const double k = -acc / error;
    if (!(std::abs(k) < 1.0))
      throw NumericError(
          "levinson_durbin: reflection coefficient left (-1, 1) at order " +
          std::to_string(m) + "; autocorrelation not positive-definite");
    result.reflections.push_back(k);

    for (int i = 1; i <= m / 2; ++i) {
      const double tmp = a[i - 1] + k * a[m - i - 1];
      a[m - i - 1] += k * a[i - 1];
      a[i - 1] = tmp;
    }
    a[m - 1] = k;
    error *= 1.0 - k * k;
  }
  result.coeffs = std::move(a);
  result.prediction_error = error;
  return result;
}

LpcModel fit_lpc(std::span<const double> frame, int order) {
  if (order < 1)
    throw ConfigError("fit_lpc: order must be positive");
  if (frame.size() <= static_cast<std::size_t>(order))
    throw ConfigError("fit_lpc: frame of " + std::to_string(frame.size()) +
                      " samples cannot support order " +
                      std::to_string(order));
  if (!all_finite(frame)) throw NumericError("fit_lpc: non-finite frame");

  LpcModel model;
  model.order = order;

  std::vector<double> r(static_cast<std::size_t>(order) + 1);
  kernels::autocorrelation(frame.data(), frame.size(),
                           static_cast<std::size_t>(order), r.data());

  if (r[0] < kSilenceThresholdR0) {
    model.coeffs.assign(static_cast<std::size_t>(order), 0.0);
    model.residual.assign(frame.begin(), frame.end());
    model.passthrough = true;
    return model;
  }

  r[0] *= 1.0 + kDiagonalLoading;
  model.coeffs = levinson_durbin(r, order).coeffs;

  // residual[n] = frame[n] + sum_k a_k frame[n-k], zero history before the
  // frame.  The padded copy turns the inner sum into one contiguous dot with
  // the reversed coefficients.
  std::vector<double> reversed(model.coeffs.rbegin(), model.coeffs.rend());
  std::vector<double> padded(static_cast<std::size_t>(order) + frame.size(),
                             0.0);
  std::copy(frame.begin(), frame.end(),
            padded.begin() + static_cast<std::ptrdiff_t>(order));
  model.residual.resize(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n)
    model.residual[n] =
        frame[n] + kernels::dot(reversed.data(), padded.data() + n,
                                static_cast<std::size_t>(order));
  return model;
}

PoleSet poles_from_coeffs(std::span<const double> coeffs) {
  if (!all_finite(coeffs))
    throw NumericError("poles_from_coeffs: non-finite coefficients");

  const int p = static_cast<int>(coeffs.size());
  PoleSet set;
  set.poles.reserve(coeffs.size());
  if (p == 0) return set;

  // Companion matrix of z^p + a_1 z^{p-1} + ... + a_p.  Real Schur keeps
  // complex eigenvalues in exact conjugate pairs.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) companion(0, i) = -coeffs[static_cast<std::size_t>(i)];
  for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw NumericError("poles_from_coeffs: eigenvalue iteration failed");

  // Symmetrise: warp only ever sees the upper-half pole, so build each
  // lower-half pole as an exact mirror of its mate.
  std::vector<std::complex<double>> upper;
  std::vector<std::complex<double>> lower;
  for (int i = 0; i < p; ++i) {
    const std::complex<double> root =
        polish_root(coeffs, solver.eigenvalues()[i]);
    if (std::abs(root.imag()) <= kRealPoleImagThreshold)
      set.poles.push_back(pole_from_root(root));
    else if (root.imag() > 0.0)
      upper.push_back(root);
    else
      lower.push_back(root);
  }
  if (upper.size() != lower.size())
    throw StructuralError("poles_from_coeffs: unpaired complex roots");

  for (const std::complex<double>& u : upper) {
    auto nearest = std::min_element(
        lower.begin(), lower.end(),
        [&](const std::complex<double>& a, const std::complex<double>& b) {
          return std::abs(std::conj(u) - a) < std::abs(std::conj(u) - b);
        });
    const std::complex<double> paired = 0.5 * (u + std::conj(*nearest));
    lower.erase(nearest);
    const Pole pole = pole_from_root(paired);
    set.poles.push_back(pole);
    set.poles.push_back({pole.magnitude, -pole.angle});
  }
  return set;
}

PoleSet poles_from_coeffs(const LpcModel& model) {
  return poles_from_coeffs(model.coeffs);
}

std::vector<double> coeffs_from_poles(const PoleSet& poles) {
  // Poles this close to the real axis count as their own mirror.
  constexpr double kAxisEpsilon = 1e-12;

  // Closure check: every off-axis pole needs its mirror.
  std::vector<double> upper;
  std::vector<double> lower;
  std::vector<double> upper_mag;
  std::vector<double> lower_mag;
  for (const Pole& pole : poles.poles) {
    if (pole.magnitude < 0.0 || !std::isfinite(pole.magnitude) ||
        !std::isfinite(pole.angle))
      throw NumericError("coeffs_from_poles: invalid pole");
    if (pole.angle > kAxisEpsilon &&
        pole.angle < std::numbers::pi - kAxisEpsilon) {
      upper.push_back(pole.angle);
      upper_mag.push_back(pole.magnitude);
    } else if (pole.angle < -kAxisEpsilon &&
               pole.angle > -std::numbers::pi + kAxisEpsilon) {
      lower.push_back(-pole.angle);
      lower_mag.push_back(pole.magnitude);
    }
  }
  auto order_by_angle = [](std::vector<double>& angles,
                           std::vector<double>& mags) {
    std::vector<std::size_t> idx(angles.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return angles[a] != angles[b] ? angles[a] < angles[b]
                                    : mags[a] < mags[b];
    });
    std::vector<double> sa(angles.size()), sm(mags.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      sa[i] = angles[idx[i]];
      sm[i] = mags[idx[i]];
    }
    angles = std::move(sa);
    mags = std::move(sm);
  };
  order_by_angle(upper, upper_mag);
  order_by_angle(lower, lower_mag);
  if (upper.size() != lower.size())
    throw StructuralError("coeffs_from_poles: pole set not conjugate-closed");
  for (std::size_t i = 0; i < upper.size(); ++i)
    if (std::abs(upper[i] - lower[i]) > 1e-12 ||
        std::abs(upper_mag[i] - lower_mag[i]) > 1e-12)
      throw StructuralError(
          "coeffs_from_poles: pole set not conjugate-closed");

  std::vector<std::complex<double>> poly{1.0};
  poly.reserve(poles.poles.size() + 1);
  for (const Pole& pole : poles.poles) {
    const std::complex<double> root =
        std::polar(pole.magnitude, pole.angle);
    poly.push_back(0.0);
    for (std::size_t i = poly.size() - 1; i > 0; --i)
      poly[i] = poly[i] - root * poly[i - 1];
  }

  std::vector<double> coeffs(poles.poles.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::complex<double> c = poly[i + 1];
    if (std::abs(c.imag()) > kImagResidueLimit)
      throw NumericError(
          "coeffs_from_poles: imaginary residue above tolerance at "
          "coefficient " +
          std::to_string(i + 1));
    coeffs[i] = c.real();
  }
  return coeffs;
}

std::vector<double> synthesize(std::span<const double> coeffs,
                               std::span<const double> residual) {
  if (!all_finite(coeffs))
    throw NumericError("synthesize: non-finite coefficients");

  const std::size_t p = coeffs.size();
  std::vector<double> reversed(coeffs.rbegin(), coeffs.rend());
  std::vector<double> padded(p + residual.size(), 0.0);
  for (std::size_t n = 0; n < residual.size(); ++n) {
    const double value =
        residual[n] - kernels::dot(reversed.data(), padded.data() + n, p);
    if (!std::isfinite(value))
      throw NumericError("synthesize: filter diverged at sample " +
                         std::to_string(n));
    padded[p + n] = value;
  }
  return {padded.begin() + static_cast<std::ptrdiff_t>(p), padded.end()};
}

}  // namespace pseudovoice
