// include/pseudovoice/anonymizer.h

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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pseudovoice/audio_buffer.h"
#include "pseudovoice/mcadams.h"

namespace pseudovoice {

struct ManifestRow;

enum class AlphaMode {
  kFixed,
  kUniform,
};

// Everything that determines an anonymisation run.  Defaults reproduce the
// fixed alpha = 0.8, order-20 secondary baseline.
struct AnonymisationConfig {
  AlphaMode mode = AlphaMode::kFixed;
  double alpha = 0.8;      // fixed mode
  double alpha_min = 0.0;  // uniform mode
  double alpha_max = 0.0;
  int lpc_order = 20;
  double frame_ms = 20.0;
  double hop_ms = 10.0;
  std::string secret_seed;
  std::string split;

  // Throws ConfigError on an invalid mode/range combination.
  void validate() const;

  AnonymisationConfig with_split(std::string new_split) const;
};

// A speaker's resolved coefficient plus enough provenance to audit a run
// without exposing the seed.
struct SpeakerContext {
  std::string speaker_id;
  McAdamsCoefficient alpha;

  struct Provenance {
    AlphaMode mode = AlphaMode::kFixed;
    std::string seed_digest;  // short hex of SHA-256(seed), never the seed
    std::string split;
  } provenance;
};

// Resolves a speaker's coefficient.  Fixed mode returns alpha verbatim.
// Uniform mode maps a keyed hash of (secret_seed, speaker_id, split) to
// u in [0, 1) and returns alpha_min + u * (alpha_max - alpha_min), so the
// draw is deterministic per (seed, speaker, split) and differs across
// split labels.
SpeakerContext sample_alpha(const AnonymisationConfig& config,
                            std::string_view speaker_id);

// The per-utterance pipeline: frame, LPC-fit, extract poles, warp angles by
// ctx.alpha, rebuild coefficients, resynthesise from the original residual,
// overlap-add.  Output length equals input length; the utterance is scaled
// by 1/peak only when a sample exceeds full scale.  Requires 16 kHz input.
AudioBuffer anonymise_utterance(const AudioBuffer& audio,
                                const SpeakerContext& ctx,
                                const AnonymisationConfig& config);

// Per-utterance outcome of a corpus run.
struct CorpusReport {
  struct Row {
    std::string utterance_id;
    std::string speaker_id;
    std::string split;
    bool ok = false;
    double alpha = 0.0;
    std::string output_path;
    std::string message;  // empty on success
  };

  std::vector<Row> rows;

  bool all_ok() const;
};

// Maps a manifest split label to the config used for that split.
using SplitConfigResolver =
    std::function<AnonymisationConfig(const std::string& split)>;

// Anonymises every manifest row, mirroring the input tree under output_dir.
// Rows with unreadable audio are recorded and processing continues; rows
// that would collide on an output path abort before any work starts.
// jobs <= 1 runs serially; the report order matches the manifest either way.
CorpusReport anonymise_corpus(const std::vector<ManifestRow>& rows,
                              const SplitConfigResolver& config_for_split,
                              const std::filesystem::path& input_base,
                              const std::filesystem::path& output_dir,
                              int jobs = 1);

// Report CSV: utterance_id,speaker_id,split,status,alpha,output_path,message.
// The alpha column reads "[redacted]" unless reveal_alpha is set.
void write_report_csv(const std::filesystem::path& path,
                      const CorpusReport& report, bool reveal_alpha);

}  // namespace pseudovoice
