// src/wav.cc

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

#include "pseudovoice/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "pseudovoice/errors.h"

namespace pseudovoice {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError(path.string() + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t chunk_len = read_u32(chunk + 4);
    if (pos + 8 + chunk_len > bytes.size())
      throw IoError(path.string() + ": truncated chunk at offset " +
                    std::to_string(pos));
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_len < 16)
        throw IoError(path.string() + ": truncated fmt chunk");
      format = read_u16(chunk + 8);
      channels = read_u16(chunk + 10);
      sample_rate = read_u32(chunk + 12);
      bits = read_u16(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = chunk_len;
      break;  // fmt must precede data in files we accept
    }
    pos += 8 + chunk_len + (chunk_len % 2);  // chunks are word-aligned
  }

  if (!have_fmt) throw IoError(path.string() + ": missing fmt chunk");
  if (data == nullptr) throw IoError(path.string() + ": missing data chunk");
  if (format != kFormatPcm)
    throw FormatError(path.string() + ": unsupported format tag " +
                      std::to_string(format) + " (PCM only)");
  if (channels != 1)
    throw FormatError(path.string() + ": unsupported channel count " +
                      std::to_string(channels) + " (mono only)");
  if (bits != 16)
    throw FormatError(path.string() + ": unsupported sample width " +
                      std::to_string(bits) + " bits (16-bit only)");
  if (sample_rate == 0)
    throw FormatError(path.string() + ": zero sample rate");
  if (data_len % 2 != 0)
    throw IoError(path.string() + ": odd data chunk length");

  AudioBuffer audio;
  audio.sample_rate_hz = static_cast<int>(sample_rate);
  audio.samples.resize(data_len / 2);
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    const std::int16_t word =
        static_cast<std::int16_t>(read_u16(data + 2 * i));
    audio.samples[i] = static_cast<double>(word) / 32768.0;
  }
  return audio;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& audio) {
  if (audio.sample_rate_hz <= 0)
    throw InputError("write_wav: sample rate must be positive");

  const std::uint32_t data_len =
      static_cast<std::uint32_t>(audio.size() * 2);
  std::vector<unsigned char> bytes;
  bytes.reserve(44 + data_len);

  put_tag(bytes, "RIFF");
  put_u32(bytes, 36 + data_len);
  put_tag(bytes, "WAVE");
  put_tag(bytes, "fmt ");
  put_u32(bytes, 16);
  put_u16(bytes, kFormatPcm);
  put_u16(bytes, 1);  // mono
  put_u32(bytes, static_cast<std::uint32_t>(audio.sample_rate_hz));
  put_u32(bytes, static_cast<std::uint32_t>(audio.sample_rate_hz) * 2);
  put_u16(bytes, 2);   // block align
  put_u16(bytes, 16);  // bits per sample
  put_tag(bytes, "data");
  put_u32(bytes, data_len);

  for (double sample : audio.samples) {
    if (!std::isfinite(sample))
      throw InputError("write_wav: non-finite sample");
    // round half away from zero, clamp at full scale
    const long word = std::lround(sample * 32768.0);
    const std::int16_t clamped = static_cast<std::int16_t>(
        std::clamp(word, -32768L, 32767L));
    put_u16(bytes, static_cast<std::uint16_t>(clamped));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace pseudovoice
