// src/framing.cc

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

#include "pseudovoice/framing.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pseudovoice/errors.h"
#include "pseudovoice/kernels.h"

namespace pseudovoice {

namespace {

// ms -> whole sample count, or ConfigError.
int samples_from_ms(double ms, int sample_rate_hz, const char* what) {
  const double exact = ms * static_cast<double>(sample_rate_hz) / 1000.0;
  const double rounded = std::round(exact);
  if (ms <= 0.0 || std::abs(exact - rounded) > 1e-9 || rounded < 1.0)
    throw ConfigError(std::string(what) + " of " + std::to_string(ms) +
                      " ms is not a whole positive sample count at " +
                      std::to_string(sample_rate_hz) + " Hz");
  return static_cast<int>(rounded);
}

}  // namespace

std::vector<double> hann_periodic(int n) {
  if (n <= 0 || n % 2 != 0)
    throw ConfigError("Hann window length must be even and positive, got " +
                      std::to_string(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
    w[i + half] = 1.0 - w[i];  // exact COLA at 50% overlap
  }
  return w;
}

FrameStream::FrameStream(int frame_len, int hop, int sample_rate_hz,
                         std::size_t frame_count)
    : frame_len_(frame_len),
      hop_(hop),
      sample_rate_hz_(sample_rate_hz),
      frame_count_(frame_count),
      data_(frame_count * static_cast<std::size_t>(frame_len), 0.0),
      window_(hann_periodic(frame_len)) {
  if (frame_len != 2 * hop)
    throw ConfigError("frame length must be twice the hop, got " +
                      std::to_string(frame_len) + "/" + std::to_string(hop));
}

std::span<double> FrameStream::frame(std::size_t k) {
  return {data_.data() + k * static_cast<std::size_t>(frame_len_),
          static_cast<std::size_t>(frame_len_)};
}

std::span<const double> FrameStream::frame(std::size_t k) const {
  return {data_.data() + k * static_cast<std::size_t>(frame_len_),
          static_cast<std::size_t>(frame_len_)};
}

FrameStream frame_signal(const AudioBuffer& audio, double frame_ms,
                         double hop_ms) {
  const int frame_len = samples_from_ms(frame_ms, audio.sample_rate_hz,
                                        "frame length");
  const int hop = samples_from_ms(hop_ms, audio.sample_rate_hz, "hop");
  if (frame_len != 2 * hop)
    throw ConfigError("frame/hop must give 50% overlap, got " +
                      std::to_string(frame_len) + "/" + std::to_string(hop) +
                      " samples");

  const std::size_t len = audio.size();
  const std::size_t count =
      len == 0 ? 0 : (len + static_cast<std::size_t>(hop) - 1) /
                         static_cast<std::size_t>(hop);
  FrameStream out(frame_len, hop, audio.sample_rate_hz, count);

  const std::span<const double> window = out.window();
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t start = k * static_cast<std::size_t>(hop);
    const std::size_t avail =
        std::min(static_cast<std::size_t>(frame_len), len - start);
    kernels::multiply(audio.samples.data() + start, window.data(),
                      out.frame(k).data(), avail);
    // beyond avail the frame stays zero-padded
  }
  return out;
}

AudioBuffer overlap_add(const FrameStream& frames, std::size_t output_len) {
  if (frames.frame_count() > 0 &&
      (frames.frame_len() <= 0 || frames.frame_len() != 2 * frames.hop()))
    throw StructuralError("overlap_add: inconsistent frame geometry");

  AudioBuffer out;
  out.sample_rate_hz = frames.sample_rate_hz();
  out.samples.assign(output_len, 0.0);
  for (std::size_t k = 0; k < frames.frame_count(); ++k) {
    const std::size_t start = k * static_cast<std::size_t>(frames.hop());
    if (start >= output_len) break;
    const std::size_t n =
        std::min(static_cast<std::size_t>(frames.frame_len()),
                 output_len - start);
    kernels::accumulate(out.samples.data() + start, frames.frame(k).data(), n);
  }
  return out;
}

}  // namespace pseudovoice
