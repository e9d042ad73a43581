// src/anonymizer.cc

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

#include "pseudovoice/anonymizer.h"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>
#include <vector>

#include "pseudovoice/errors.h"
#include "pseudovoice/framing.h"
#include "pseudovoice/manifest.h"
#include "pseudovoice/wav.h"

namespace pseudovoice {

namespace {

// HMAC-SHA256 over length-prefixed fields, so ("ab","c") and ("a","bc")
// never collide.
std::array<unsigned char, 32> keyed_digest(std::string_view seed,
                                           std::string_view speaker_id,
                                           std::string_view split) {
  std::vector<unsigned char> message;
  message.reserve(8 + speaker_id.size() + split.size());
  auto put_field = [&message](std::string_view field) {
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    for (int shift = 0; shift < 32; shift += 8)
      message.push_back(static_cast<unsigned char>((n >> shift) & 0xff));
    message.insert(message.end(), field.begin(), field.end());
  };
  put_field(speaker_id);
  put_field(split);

  std::array<unsigned char, 32> digest{};
  unsigned int digest_len = 0;
  if (HMAC(EVP_sha256(), seed.data(), static_cast<int>(seed.size()),
           message.data(), message.size(), digest.data(),
           &digest_len) == nullptr ||
      digest_len != digest.size())
    throw NumericError("sample_alpha: HMAC failure");
  return digest;
}

// First 53 bits of the digest as a uniform value in [0, 1).
double unit_interval_from_digest(const std::array<unsigned char, 32>& digest) {
  std::uint64_t word = 0;
  for (int i = 0; i < 8; ++i)
    word = (word << 8) | digest[static_cast<std::size_t>(i)];
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

std::string short_sha256_hex(std::string_view text) {
  std::array<unsigned char, 32> digest{};
  unsigned int digest_len = 0;
  if (EVP_Digest(text.data(), text.size(), digest.data(), &digest_len,
                 EVP_sha256(), nullptr) != 1)
    throw NumericError("seed digest failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 8; ++i) {
    out.push_back(hex[digest[static_cast<std::size_t>(i)] >> 4]);
    out.push_back(hex[digest[static_cast<std::size_t>(i)] & 0xf]);
  }
  return out;
}

void run_parallel(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& work) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  const unsigned workers = std::min<unsigned>(
      static_cast<unsigned>(jobs), static_cast<unsigned>(count));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1))
        work(i);
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace

void AnonymisationConfig::validate() const {
  if (mode == AlphaMode::kFixed) {
    if (!(alpha > 0.0) || alpha > 1.0)
      throw ConfigError("fixed alpha must lie in (0, 1], got " +
                        std::to_string(alpha));
  } else {
    if (!(alpha_min > 0.0) || alpha_min > alpha_max || alpha_max > 1.0)
      throw ConfigError("alpha range must satisfy 0 < alpha_min <= "
                        "alpha_max <= 1, got [" +
                        std::to_string(alpha_min) + ", " +
                        std::to_string(alpha_max) + "]");
  }
  if (lpc_order < 2)
    throw ConfigError("lpc_order must be at least 2, got " +
                      std::to_string(lpc_order));
  if (!(frame_ms > 0.0) || !(hop_ms > 0.0))
    throw ConfigError("frame_ms and hop_ms must be positive");
}

AnonymisationConfig AnonymisationConfig::with_split(
    std::string new_split) const {
  AnonymisationConfig copy = *this;
  copy.split = std::move(new_split);
  return copy;
}

SpeakerContext sample_alpha(const AnonymisationConfig& config,
                            std::string_view speaker_id) {
  config.validate();

  double alpha = config.alpha;
  if (config.mode == AlphaMode::kUniform) {
    const double u = unit_interval_from_digest(
        keyed_digest(config.secret_seed, speaker_id, config.split));
    alpha = config.alpha_min + u * (config.alpha_max - config.alpha_min);
  }
  return {std::string(speaker_id),
          McAdamsCoefficient(alpha),
          {config.mode, short_sha256_hex(config.secret_seed), config.split}};
}

AudioBuffer anonymise_utterance(const AudioBuffer& audio,
                                const SpeakerContext& ctx,
                                const AnonymisationConfig& config) {
  config.validate();
  if (audio.sample_rate_hz != kAnonymisationSampleRateHz)
    throw InputError("anonymise_utterance: expected " +
                     std::to_string(kAnonymisationSampleRateHz) +
                     " Hz input, got " + std::to_string(audio.sample_rate_hz));

  FrameStream frames = frame_signal(audio, config.frame_ms, config.hop_ms);
  const double alpha = ctx.alpha.value();

  for (std::size_t k = 0; k < frames.frame_count(); ++k) {
    std::span<double> frame = frames.frame(k);
    LpcModel model = fit_lpc(frame, config.lpc_order);
    if (model.passthrough) continue;  // silent frame stays verbatim

    PoleSet poles = poles_from_coeffs(model);
    for (const Pole& pole : poles.poles)
      if (!(pole.magnitude < 1.0))
        throw NumericError("anonymise_utterance: unstable pole (|z| = " +
                           std::to_string(pole.magnitude) + ") in frame " +
                           std::to_string(k));

    std::vector<double> new_coeffs;
    std::vector<double> resynthesised;
    try {
      new_coeffs = coeffs_from_poles(warp_poleset(poles, alpha));
      resynthesised = synthesize(new_coeffs, model.residual);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (frame " +
                         std::to_string(k) + ")");
    }
    std::copy(resynthesised.begin(), resynthesised.end(), frame.begin());
  }

  AudioBuffer out = overlap_add(frames, audio.size());

  double peak = 0.0;
  for (double s : out.samples) peak = std::max(peak, std::abs(s));
  if (peak > 1.0)
    for (double& s : out.samples) s /= peak;
  return out;
}

bool CorpusReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const Row& r) { return r.ok; });
}

CorpusReport anonymise_corpus(const std::vector<ManifestRow>& rows,
                              const SplitConfigResolver& config_for_split,
                              const std::filesystem::path& input_base,
                              const std::filesystem::path& output_dir,
                              int jobs) {
  namespace fs = std::filesystem;

  CorpusReport report;
  report.rows.resize(rows.size());

  // Resolve output paths up front; colliding rows abort the whole run.
  std::vector<fs::path> inputs(rows.size());
  std::vector<fs::path> outputs(rows.size());
  std::set<fs::path> seen_outputs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const fs::path raw(rows[i].path);
    inputs[i] = raw.is_absolute() ? raw : input_base / raw;
    const fs::path mirrored =
        raw.is_absolute() ? raw.filename() : raw.lexically_normal();
    if (mirrored.empty() || *mirrored.begin() == "..")
      throw IoError("manifest path escapes the output tree: " +
                    rows[i].path);
    outputs[i] = output_dir / mirrored;
    if (!seen_outputs.insert(outputs[i]).second)
      throw IoError("duplicate output path " + outputs[i].string());
  }

  run_parallel(rows.size(), jobs, [&](std::size_t i) {
    CorpusReport::Row& out_row = report.rows[i];
    out_row.utterance_id = rows[i].utterance_id;
    out_row.speaker_id = rows[i].speaker_id;
    out_row.split = rows[i].split;
    try {
      const AnonymisationConfig config = config_for_split(rows[i].split);
      const SpeakerContext ctx = sample_alpha(config, rows[i].speaker_id);
      out_row.alpha = ctx.alpha.value();
      const AudioBuffer input = read_wav(inputs[i]);
      const AudioBuffer output = anonymise_utterance(input, ctx, config);
      fs::create_directories(outputs[i].parent_path());
      write_wav(outputs[i], output);
      out_row.output_path = outputs[i].string();
      out_row.ok = true;
    } catch (const std::exception& e) {
      out_row.ok = false;
      out_row.message = e.what();
    }
  });
  return report;
}

void write_report_csv(const std::filesystem::path& path,
                      const CorpusReport& report, bool reveal_alpha) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "utterance_id,speaker_id,split,status,alpha,output_path,message\n";
  for (const CorpusReport::Row& row : report.rows) {
    out << row.utterance_id << ',' << row.speaker_id << ',' << row.split
        << ',' << (row.ok ? "ok" : "error") << ',';
    if (reveal_alpha) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", row.alpha);
      out << buf;
    } else {
      out << "[redacted]";
    }
    out << ',' << row.output_path << ',' << row.message << '\n';
  }
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace pseudovoice
