// tests/support/synthetic.h

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

// Deterministic signal generators and measurement helpers shared by the unit
// and acceptance suites.  Everything here is independent of the library code
// it is used to check: AR processes run their own recurrences and polynomial
// expansion uses real quadratic factors directly.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "pseudovoice/audio_buffer.h"

namespace testsupport {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform01(rng) * (hi - lo);
}

// Box-Muller on raw uniform bits; std::normal_distribution is not
// reproducible across standard libraries.
inline double gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline std::vector<double> white_noise(std::size_t n, std::mt19937_64& rng,
                                       double stddev = 1.0) {
  std::vector<double> out(n);
  for (double& v : out) v = stddev * gaussian(rng);
  return out;
}

// x[n] = e[n] - sum_k a_k x[n-k]; the generating recurrence, written out
// directly so tests do not lean on the library's synthesis filter.
inline std::vector<double> ar_process(std::span<const double> coeffs,
                                      std::span<const double> excitation) {
  std::vector<double> x(excitation.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double value = excitation[n];
    for (std::size_t k = 0; k < coeffs.size() && k < n; ++k)
      value -= coeffs[k] * x[n - 1 - k];
    x[n] = value;
  }
  return x;
}

// Expands conjugate pole pairs (rho_i, phi_i) and real poles r_j into
// coefficients of A(z) = 1 + a_1 z^-1 + ... using real factors only:
// (z - p)(z - conj p) = z^2 - 2 rho cos(phi) z + rho^2.
inline std::vector<double> expand_poles_real(
    std::span<const std::pair<double, double>> conjugate_pairs,
    std::span<const double> real_poles) {
  std::vector<double> poly{1.0};
  auto convolve = [&poly](std::span<const double> factor) {
    std::vector<double> next(poly.size() + factor.size() - 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < factor.size(); ++j)
        next[i + j] += poly[i] * factor[j];
    poly = std::move(next);
  };
  for (const auto& [rho, phi] : conjugate_pairs) {
    const double quad[3] = {1.0, -2.0 * rho * std::cos(phi), rho * rho};
    convolve(quad);
  }
  for (double r : real_poles) {
    const double lin[2] = {1.0, -r};
    convolve(lin);
  }
  return {poly.begin() + 1, poly.end()};  // drop the leading 1
}

inline pseudovoice::AudioBuffer resonator_utterance(double rho, double angle,
                                                    std::size_t n,
                                                    std::uint64_t seed,
                                                    double rms = 0.05) {
  std::mt19937_64 rng(seed);
  const std::pair<double, double> pair{rho, angle};
  const std::vector<double> coeffs = expand_poles_real({&pair, 1}, {});
  std::vector<double> x = ar_process(coeffs, white_noise(n, rng));
  double energy = 0.0;
  for (double v : x) energy += v * v;
  const double scale =
      energy > 0.0 ? rms / std::sqrt(energy / static_cast<double>(n)) : 1.0;
  for (double& v : x) v *= scale;
  return {std::move(x), 16000};
}

// A synthetic "speaker": a fixed set of resonances.  Utterances share the
// filter up to a small per-utterance jitter and differ in excitation.
struct SyntheticSpeaker {
  std::vector<std::pair<double, double>> pairs;  // (rho, phi)
};

inline SyntheticSpeaker random_speaker(std::mt19937_64& rng) {
  SyntheticSpeaker speaker;
  // five resonances spread over the band, separated enough to stay distinct;
  // bandwidths kept moderate so the warp does not dominate the output level
  const double band_lo = 0.20;
  const double band_hi = 2.80;
  const int count = 5;
  std::vector<double> angles;
  while (static_cast<int>(angles.size()) < count) {
    const double candidate = uniform_in(rng, band_lo, band_hi);
    const bool clear =
        std::all_of(angles.begin(), angles.end(), [&](double a) {
          return std::abs(a - candidate) > 0.22;
        });
    if (clear) angles.push_back(candidate);
  }
  std::sort(angles.begin(), angles.end());
  for (double a : angles)
    speaker.pairs.emplace_back(uniform_in(rng, 0.86, 0.93), a);
  return speaker;
}

inline pseudovoice::AudioBuffer speaker_utterance(
    const SyntheticSpeaker& speaker, std::size_t n, std::mt19937_64& rng,
    double rms = 0.05) {
  std::vector<std::pair<double, double>> jittered = speaker.pairs;
  for (auto& [rho, phi] : jittered) {
    rho = std::clamp(rho + 0.003 * gaussian(rng), 0.82, 0.95);
    phi = std::clamp(phi + 0.005 * gaussian(rng), 0.05, 3.05);
  }
  const std::vector<double> coeffs = expand_poles_real(jittered, {});
  std::vector<double> x = ar_process(coeffs, white_noise(n, rng));
  double energy = 0.0;
  for (double v : x) energy += v * v;
  const double scale =
      energy > 0.0 ? rms / std::sqrt(energy / static_cast<double>(n)) : 1.0;
  for (double& v : x) v *= scale;
  return {std::move(x), 16000};
}

// Welch power-spectrum peak, in Hz.  Dense overlap plus a two-pass moving
// average keeps periodogram noise from dragging the argmax off the
// resonance; parabolic refinement removes the bin quantisation.
inline double spectral_peak_hz(const pseudovoice::AudioBuffer& audio,
                               int segment = 512, int nfft = 8192,
                               double smooth_hz = 120.0) {
  std::vector<double> window(static_cast<std::size_t>(segment));
  for (int i = 0; i < segment; ++i)
    window[static_cast<std::size_t>(i)] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / segment);

  std::vector<double> power(static_cast<std::size_t>(nfft) / 2 + 1, 0.0);
  Eigen::FFT<double> fft;
  const std::size_t hop = static_cast<std::size_t>(segment) / 4;
  for (std::size_t start = 0;
       start + static_cast<std::size_t>(segment) <= audio.size();
       start += hop) {
    std::vector<double> padded(static_cast<std::size_t>(nfft), 0.0);
    for (int i = 0; i < segment; ++i)
      padded[static_cast<std::size_t>(i)] =
          audio.samples[start + static_cast<std::size_t>(i)] *
          window[static_cast<std::size_t>(i)];
    std::vector<std::complex<double>> spectrum;
    fft.fwd(spectrum, padded);
    for (std::size_t i = 0; i < power.size(); ++i)
      power[i] += std::norm(spectrum[i]);
  }

  const double bin_hz = static_cast<double>(audio.sample_rate_hz) / nfft;
  const int half = std::max(1, static_cast<int>(smooth_hz / bin_hz / 2.0));
  const int bins = static_cast<int>(power.size());
  auto smooth = [&](const std::vector<double>& in) {
    std::vector<double> out(in.size());
    for (int i = 0; i < bins; ++i) {
      double acc = 0.0;
      int cnt = 0;
      for (int j = std::max(0, i - half); j <= std::min(bins - 1, i + half);
           ++j) {
        acc += in[static_cast<std::size_t>(j)];
        ++cnt;
      }
      out[static_cast<std::size_t>(i)] = acc / cnt;
    }
    return out;
  };
  const std::vector<double> smoothed = smooth(smooth(power));

  std::size_t best = 1;
  for (std::size_t i = 1; i + 1 < smoothed.size(); ++i)
    if (smoothed[i] > smoothed[best]) best = i;
  if (best > 0 && best + 1 < smoothed.size() && smoothed[best] > 0.0) {
    const double l0 = std::log(smoothed[best - 1]);
    const double l1 = std::log(smoothed[best]);
    const double l2 = std::log(smoothed[best + 1]);
    const double denom = l0 - 2.0 * l1 + l2;
    if (denom < 0.0)
      return (static_cast<double>(best) + 0.5 * (l0 - l2) / denom) * bin_hz;
  }
  return static_cast<double>(best) * bin_hz;
}

}  // namespace testsupport
