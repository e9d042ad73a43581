// include/pseudovoice/wav.h

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

#include "pseudovoice/audio_buffer.h"

namespace pseudovoice {

// Decodes a mono 16-bit PCM RIFF/WAV file; samples are scaled to [-1, 1]
// by 1/32768.  Throws FormatError naming the offending property for
// anything that is not mono 16-bit PCM, IoError on truncated or unreadable
// files.
AudioBuffer read_wav(const std::filesystem::path& path);

// Writes mono 16-bit PCM WAV.  Samples are clamped to [-1, 1] and rounded
// half away from zero; the byte stream is identical across platforms for
// identical input.
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio);

}  // namespace pseudovoice
