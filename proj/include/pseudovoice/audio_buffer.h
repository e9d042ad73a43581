// include/pseudovoice/audio_buffer.h

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
#include <vector>

namespace pseudovoice {

// Mono PCM audio in [-1, 1] at a fixed sample rate; the unit of
// utterance-level I/O throughout the toolkit.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

// Anonymisation entry points accept this rate only.
inline constexpr int kAnonymisationSampleRateHz = 16000;

}  // namespace pseudovoice
