// include/pseudovoice/framing.h

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

#include <cstddef>
#include <span>
#include <vector>

#include "pseudovoice/audio_buffer.h"

namespace pseudovoice {

// Periodic Hann curve of even length n.  Built so that w[i] + w[i + n/2] is
// exactly 1.0, which makes the 50% overlap-add identity hold to the last bit.
std::vector<double> hann_periodic(int n);

// Hann-windowed analysis frames at 50% overlap.  The window is applied once,
// here; synthesis never re-applies it, so summing unmodified frames back with
// overlap_add() reconstructs the interior of the signal exactly.
class FrameStream {
 public:
  FrameStream() = default;
  FrameStream(int frame_len, int hop, int sample_rate_hz,
              std::size_t frame_count);

  std::size_t frame_count() const { return frame_count_; }
  int frame_len() const { return frame_len_; }
  int hop() const { return hop_; }
  int sample_rate_hz() const { return sample_rate_hz_; }
  bool empty() const { return frame_count_ == 0; }

  std::span<double> frame(std::size_t k);
  std::span<const double> frame(std::size_t k) const;
  std::span<const double> window() const { return window_; }

 private:
  int frame_len_ = 0;
  int hop_ = 0;
  int sample_rate_hz_ = 0;
  std::size_t frame_count_ = 0;
  std::vector<double> data_;  // frame_count * frame_len, row-major
  std::vector<double> window_;
};

// Cuts audio into windowed frames; frame k starts at sample k*hop and the
// last frames are zero-padded.  frame_ms and hop_ms must convert to whole
// sample counts with frame_len == 2*hop, else ConfigError.  Empty audio
// yields an empty stream.
FrameStream frame_signal(const AudioBuffer& audio, double frame_ms,
                         double hop_ms);

// out[n] = sum_k frame_k[n - k*hop], truncated to output_len.  Throws
// StructuralError on inconsistent frame geometry.
AudioBuffer overlap_add(const FrameStream& frames, std::size_t output_len);

}  // namespace pseudovoice
