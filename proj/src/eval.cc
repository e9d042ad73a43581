// src/eval.cc

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

#include "pseudovoice/eval.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "pseudovoice/errors.h"
#include "pseudovoice/framing.h"
#include "pseudovoice/kernels.h"
#include "pseudovoice/lpc.h"

namespace pseudovoice {

namespace {

void append_number(std::string& out, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  out += buf;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

double frame_energy(std::span<const double> frame) {
  return kernels::dot(frame.data(), frame.data(), frame.size());
}

}  // namespace

EnvelopeCurve envelope_from_coeffs(std::span<const double> coeffs,
                                   int grid_size, int sample_rate_hz) {
  if (grid_size < 2)
    throw ConfigError("envelope grid needs at least 2 points");
  for (double c : coeffs)
    if (!std::isfinite(c))
      throw NumericError("envelope_from_coeffs: non-finite coefficients");

  EnvelopeCurve curve;
  curve.points.resize(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    const double omega = std::numbers::pi * i / (grid_size - 1);
    // Horner over A(e^{jw}) = 1 + sum_k a_k e^{-jkw}
    const std::complex<double> w = std::polar(1.0, -omega);
    std::complex<double> value = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      value = (value + *it) * w;
    value += 1.0;
    const double mag = std::abs(value);
    if (mag == 0.0)
      throw NumericError("envelope_from_coeffs: A(z) vanishes at grid point " +
                         std::to_string(i));
    curve.points[static_cast<std::size_t>(i)] = {
        angle_to_hz(omega, sample_rate_hz), -20.0 * std::log10(mag)};
  }
  return curve;
}

std::vector<double> lpc_to_cepstrum(std::span<const double> coeffs,
                                    int n_cepstra) {
  if (n_cepstra < 1) throw ConfigError("cepstral order must be positive");
  std::vector<double> c(static_cast<std::size_t>(n_cepstra), 0.0);
  auto a = [&coeffs](int k) {
    return k >= 1 && k <= static_cast<int>(coeffs.size())
               ? coeffs[static_cast<std::size_t>(k - 1)]
               : 0.0;
  };
  for (int n = 1; n <= n_cepstra; ++n) {
    double acc = -a(n);
    for (int k = 1; k < n; ++k)
      acc -= static_cast<double>(k) / n * c[static_cast<std::size_t>(k - 1)] *
             a(n - k);
    c[static_cast<std::size_t>(n - 1)] = acc;
  }
  return c;
}

SpeakerEmbedding embed_utterance(const AudioBuffer& audio,
                                 const EmbeddingConfig& config) {
  const FrameStream frames =
      frame_signal(audio, config.frame_ms, config.hop_ms);

  SpeakerEmbedding embedding;
  embedding.values.assign(static_cast<std::size_t>(config.lpc_order), 0.0);
  std::size_t voiced = 0;
  for (std::size_t k = 0; k < frames.frame_count(); ++k) {
    const LpcModel model = fit_lpc(frames.frame(k), config.lpc_order);
    if (model.passthrough) continue;
    const std::vector<double> cepstra =
        lpc_to_cepstrum(model.coeffs, config.lpc_order);
    kernels::accumulate(embedding.values.data(), cepstra.data(),
                        cepstra.size());
    ++voiced;
  }
  if (voiced == 0)
    throw InputError("embed_utterance: no voiced frames in utterance");
  for (double& v : embedding.values) v /= static_cast<double>(voiced);
  return embedding;
}

double cosine_similarity(const SpeakerEmbedding& a,
                         const SpeakerEmbedding& b) {
  if (a.values.size() != b.values.size() || a.values.empty())
    throw InputError("cosine_similarity: dimension mismatch");
  const std::size_t n = a.values.size();
  const double ab = kernels::dot(a.values.data(), b.values.data(), n);
  const double aa = kernels::dot(a.values.data(), a.values.data(), n);
  const double bb = kernels::dot(b.values.data(), b.values.data(), n);
  if (aa == 0.0 || bb == 0.0)
    throw NumericError("cosine_similarity: zero-norm embedding");
  return ab / std::sqrt(aa * bb);
}

std::vector<ScoredTrial> score_trials(
    const std::vector<TrialRow>& trials,
    const std::map<std::string, SpeakerEmbedding>& embeddings) {
  std::vector<ScoredTrial> scored;
  scored.reserve(trials.size());
  for (const TrialRow& trial : trials) {
    const auto enrol = embeddings.find(trial.enrolment_utterance_id);
    const auto test = embeddings.find(trial.test_utterance_id);
    if (enrol == embeddings.end() || test == embeddings.end())
      throw Error("score_trials: missing embedding for trial " +
                  trial.enrolment_utterance_id + " vs " +
                  trial.test_utterance_id);
    scored.push_back({trial.enrolment_utterance_id,
                      trial.test_utterance_id, trial.is_target,
                      cosine_similarity(enrol->second, test->second)});
  }
  return scored;
}

ScoreSet to_score_set(std::span<const ScoredTrial> trials) {
  ScoreSet set;
  set.scores.reserve(trials.size());
  for (const ScoredTrial& t : trials)
    set.scores.push_back({t.score, t.is_target});
  return set;
}

double compute_eer(const ScoreSet& scores) {
  std::vector<double> targets;
  std::vector<double> nontargets;
  for (const Score& s : scores.scores) {
    if (!std::isfinite(s.value))
      throw NumericError("compute_eer: non-finite score");
    (s.is_target ? targets : nontargets).push_back(s.value);
  }
  if (targets.empty() || nontargets.empty())
    throw InputError("compute_eer: need both target and non-target scores");

  std::sort(targets.begin(), targets.end());
  std::sort(nontargets.begin(), nontargets.end());

  std::vector<double> thresholds;
  thresholds.reserve(targets.size() + nontargets.size());
  thresholds.insert(thresholds.end(), targets.begin(), targets.end());
  thresholds.insert(thresholds.end(), nontargets.begin(), nontargets.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  const double n_tar = static_cast<double>(targets.size());
  const double n_non = static_cast<double>(nontargets.size());

  // Sweep thresholds downward, scores >= threshold accept.  Start above the
  // maximum score: nothing accepted, FAR 0 and FRR 1.
  double prev_far = 0.0;
  double prev_frr = 1.0;
  for (double t : thresholds) {
    const double accepted_non = static_cast<double>(
        nontargets.end() -
        std::lower_bound(nontargets.begin(), nontargets.end(), t));
    const double rejected_tar = static_cast<double>(
        std::lower_bound(targets.begin(), targets.end(), t) -
        targets.begin());
    const double far = accepted_non / n_non;
    const double frr = rejected_tar / n_tar;
    if (far >= frr) {
      if (far == frr) return far;
      // crossing lies between the previous operating point and this one
      const double denom = (far - prev_far) - (frr - prev_frr);
      const double s = (prev_frr - prev_far) / denom;
      return prev_far + s * (far - prev_far);
    }
    prev_far = far;
    prev_frr = frr;
  }
  // FAR(min threshold) = 1 and FRR = 0, so the sweep always crosses.
  throw NumericError("compute_eer: sweep failed to cross");
}

std::vector<double> log_magnitude_spectrum(std::span<const double> frame,
                                           int nfft) {
  if (nfft < 2 || (nfft & (nfft - 1)) != 0)
    throw ConfigError("nfft must be a power of two, got " +
                      std::to_string(nfft));
  if (frame.size() > static_cast<std::size_t>(nfft))
    throw ConfigError("frame longer than nfft");

  std::vector<double> padded(static_cast<std::size_t>(nfft), 0.0);
  std::copy(frame.begin(), frame.end(), padded.begin());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, padded);

  std::vector<double> out(static_cast<std::size_t>(nfft) / 2 + 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double mag = std::abs(spectrum[i]);
    out[i] = mag > 0.0 ? std::max(20.0 * std::log10(mag), kLogFloorDb)
                       : kLogFloorDb;
  }
  return out;
}

double log_spectral_distortion(const AudioBuffer& original,
                               const AudioBuffer& processed) {
  if (original.size() != processed.size() ||
      original.sample_rate_hz != processed.sample_rate_hz)
    throw InputError("log_spectral_distortion: length or rate mismatch");

  const FrameStream fa = frame_signal(original, 20.0, 10.0);
  const FrameStream fb = frame_signal(processed, 20.0, 10.0);

  int nfft = 2;
  while (nfft < fa.frame_len()) nfft *= 2;

  double total = 0.0;
  std::size_t voiced = 0;
  if (fa.frame_count() < 3) return 0.0;
  // the first and last frames overlap the partial-window edges, which are
  // excluded everywhere else too
  for (std::size_t k = 1; k + 1 < fa.frame_count(); ++k) {
    // symmetric gate: a frame counts when either side carries energy
    if (frame_energy(fa.frame(k)) < kSilenceThresholdR0 &&
        frame_energy(fb.frame(k)) < kSilenceThresholdR0)
      continue;
    const std::vector<double> la = log_magnitude_spectrum(fa.frame(k), nfft);
    const std::vector<double> lb = log_magnitude_spectrum(fb.frame(k), nfft);
    double acc = 0.0;
    for (std::size_t i = 0; i < la.size(); ++i) {
      const double d = la[i] - lb[i];
      acc += d * d;
    }
    total += std::sqrt(acc / static_cast<double>(la.size()));
    ++voiced;
  }
  return voiced == 0 ? 0.0 : total / static_cast<double>(voiced);
}

PoleTable dump_poles(const AudioBuffer& audio, int frame_index,
                     const AnonymisationConfig& config,
                     std::span<const double> alphas) {
  config.validate();
  const FrameStream frames =
      frame_signal(audio, config.frame_ms, config.hop_ms);
  if (frame_index < 0 ||
      static_cast<std::size_t>(frame_index) >= frames.frame_count())
    throw InputError("dump_poles: frame index " + std::to_string(frame_index) +
                     " outside stream of " +
                     std::to_string(frames.frame_count()) + " frames");
  for (double alpha : alphas)
    McAdamsCoefficient{alpha};  // range check

  const LpcModel model =
      fit_lpc(frames.frame(static_cast<std::size_t>(frame_index)),
              config.lpc_order);
  const PoleSet poles = poles_from_coeffs(model);

  PoleTable table;
  table.alphas.assign(alphas.begin(), alphas.end());
  for (const Pole& pole : poles.poles) {
    if (pole.angle < 0.0) continue;  // upper half and real axis only
    PoleTableRow row;
    row.rho = pole.magnitude;
    row.phi = pole.angle;
    row.freq_hz = angle_to_hz(pole.angle, audio.sample_rate_hz);
    const bool real_axis =
        pole.angle <= kRealPoleAngleThreshold ||
        pole.angle >= std::numbers::pi - kRealPoleAngleThreshold;
    for (double alpha : alphas)
      row.phi_warped.push_back(real_axis ? pole.angle
                                         : warp_angle(pole.angle, alpha));
    table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const PoleTableRow& a, const PoleTableRow& b) {
              return a.phi != b.phi ? a.phi < b.phi : a.rho < b.rho;
            });
  return table;
}

void write_envelope_csv(const std::filesystem::path& path,
                        const EnvelopeCurve& curve) {
  std::ofstream out = open_for_write(path);
  out << "freq_hz,mag_db\n";
  for (const EnvelopePoint& p : curve.points) {
    std::string line;
    append_number(line, p.frequency_hz);
    line += ',';
    append_number(line, p.magnitude_db);
    out << line << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

void write_pole_table_csv(const std::filesystem::path& path,
                          const PoleTable& table) {
  std::ofstream out = open_for_write(path);
  std::string header = "rho,phi";
  for (double alpha : table.alphas) {
    header += ",phi_alpha_";
    append_number(header, alpha);
  }
  header += ",freq_hz";
  out << header << '\n';
  for (const PoleTableRow& row : table.rows) {
    std::string line;
    append_number(line, row.rho);
    line += ',';
    append_number(line, row.phi);
    for (double warped : row.phi_warped) {
      line += ',';
      append_number(line, warped);
    }
    line += ',';
    append_number(line, row.freq_hz);
    out << line << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

void write_scores_csv(const std::filesystem::path& path,
                      std::span<const ScoredTrial> trials) {
  std::ofstream out = open_for_write(path);
  out << "enrol_id,test_id,label,score\n";
  for (const ScoredTrial& t : trials) {
    std::string line = t.enrolment_utterance_id + ',' +
                       t.test_utterance_id + ',' +
                       (t.is_target ? "target" : "non-target") + ',';
    append_number(line, t.score);
    out << line << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

void write_summary_csv(
    const std::filesystem::path& path,
    std::span<const std::pair<std::string, double>> metrics) {
  std::ofstream out = open_for_write(path);
  out << "metric,value\n";
  for (const auto& [name, value] : metrics) {
    std::string line = name + ',';
    append_number(line, value);
    out << line << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace pseudovoice
