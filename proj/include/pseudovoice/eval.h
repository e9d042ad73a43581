// include/pseudovoice/eval.h

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

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pseudovoice/anonymizer.h"
#include "pseudovoice/audio_buffer.h"
#include "pseudovoice/manifest.h"

namespace pseudovoice {

// Per-bin floor applied to log-magnitude spectra.
inline constexpr double kLogFloorDb = -100.0;

struct EnvelopePoint {
  double frequency_hz = 0.0;
  double magnitude_db = 0.0;
};

// Spectral envelope samples on a uniform grid over [0, Nyquist].
struct EnvelopeCurve {
  std::vector<EnvelopePoint> points;
};

// magnitude = -20 log10 |A(e^{jw})| on grid_size uniform w in [0, pi].
// Throws NumericError if A vanishes on a grid point.
EnvelopeCurve envelope_from_coeffs(std::span<const double> coeffs,
                                   int grid_size, int sample_rate_hz);

// Utterance-level proxy for a speaker-verification front end: the mean
// LPC-cepstrum over voiced frames.
struct SpeakerEmbedding {
  std::vector<double> values;
};

struct EmbeddingConfig {
  int lpc_order = 20;  // also the cepstral order
  double frame_ms = 20.0;
  double hop_ms = 10.0;
};

// Standard LPC-to-cepstrum recursion
// c_n = -a_n - (1/n) sum_{k=1}^{n-1} k c_k a_{n-k}.
std::vector<double> lpc_to_cepstrum(std::span<const double> coeffs,
                                    int n_cepstra);

// Throws InputError when the utterance has no voiced frames.
SpeakerEmbedding embed_utterance(const AudioBuffer& audio,
                                 const EmbeddingConfig& config = {});

double cosine_similarity(const SpeakerEmbedding& a, const SpeakerEmbedding& b);

struct Score {
  double value = 0.0;
  bool is_target = false;
};

// Labeled similarity scores; EER needs at least one of each label.
struct ScoreSet {
  std::vector<Score> scores;
};

struct ScoredTrial {
  std::string enrolment_utterance_id;
  std::string test_utterance_id;
  bool is_target = false;
  double score = 0.0;
};

// Cosine-scores every trial; embeddings are keyed by utterance id.  Throws
// Error naming the trial when an embedding is missing.
std::vector<ScoredTrial> score_trials(
    const std::vector<TrialRow>& trials,
    const std::map<std::string, SpeakerEmbedding>& embeddings);

ScoreSet to_score_set(std::span<const ScoredTrial> trials);

// Equal error rate: the crossing of false-accept and false-reject rates over
// the threshold sweep (scores >= threshold accept), linearly interpolated
// between the two bracketing operating points.
double compute_eer(const ScoreSet& scores);

// Log-magnitude FFT spectrum of one frame zero-padded to nfft (power of
// two); returns nfft/2 + 1 bins in dB floored at kLogFloorDb.
std::vector<double> log_magnitude_spectrum(std::span<const double> frame,
                                           int nfft);

// Utility proxy: per-frame RMS difference of log-magnitude spectra,
// averaged over voiced frames.  Requires equal lengths and rates.
double log_spectral_distortion(const AudioBuffer& original,
                               const AudioBuffer& processed);

// Pole table for one analysis frame: each row carries the pole, its warped
// angle per requested alpha, and the frequency of the original angle.
struct PoleTableRow {
  double rho = 0.0;
  double phi = 0.0;
  std::vector<double> phi_warped;  // one per alpha, real poles unchanged
  double freq_hz = 0.0;
};

struct PoleTable {
  std::vector<double> alphas;
  std::vector<PoleTableRow> rows;
};

// Upper-half and real poles of the given frame, sorted by angle.
PoleTable dump_poles(const AudioBuffer& audio, int frame_index,
                     const AnonymisationConfig& config,
                     std::span<const double> alphas);

// CSV emitters shared with the CLI.
void write_envelope_csv(const std::filesystem::path& path,
                        const EnvelopeCurve& curve);
void write_pole_table_csv(const std::filesystem::path& path,
                          const PoleTable& table);
void write_scores_csv(const std::filesystem::path& path,
                      std::span<const ScoredTrial> trials);
void write_summary_csv(
    const std::filesystem::path& path,
    std::span<const std::pair<std::string, double>> metrics);

}  // namespace pseudovoice
