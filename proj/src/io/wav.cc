/*
Copyright 2026 The Auralize Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "aural/io/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace aural {
namespace {

void AppendU16(std::string& out, uint16_t value) {
  out.push_back(static_cast<char>(value & 0xff));
  out.push_back(static_cast<char>((value >> 8) & 0xff));
}

void AppendU32(std::string& out, uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

uint32_t ReadU32(const std::string& data, size_t pos) {
  uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<uint32_t>(
                 static_cast<unsigned char>(data[pos + i]))
             << (8 * i);
  }
  return value;
}

uint16_t ReadU16(const std::string& data, size_t pos) {
  return static_cast<uint16_t>(
      static_cast<unsigned char>(data[pos]) |
      (static_cast<unsigned char>(data[pos + 1]) << 8));
}

}  // namespace

WavData ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open WAV file '" + path + "'");
  }
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (data.size() < 12 || data.compare(0, 4, "RIFF") != 0 ||
      data.compare(8, 4, "WAVE") != 0) {
    throw std::runtime_error("'" + path + "' is not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  uint16_t audio_format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
  size_t data_offset = 0;
  size_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const std::string chunk_id = data.substr(pos, 4);
    const uint32_t chunk_size = ReadU32(data, pos + 4);
    const size_t body = pos + 8;
    if (body + chunk_size > data.size()) {
      throw std::runtime_error("'" + path + "': truncated chunk '" +
                               chunk_id + "'");
    }
    if (chunk_id == "fmt ") {
      if (chunk_size < 16) {
        throw std::runtime_error("'" + path + "': malformed fmt chunk");
      }
      audio_format = ReadU16(data, body);
      channels = ReadU16(data, body + 2);
      sample_rate = ReadU32(data, body + 4);
      bits = ReadU16(data, body + 14);
      have_fmt = true;
    } else if (chunk_id == "data") {
      data_offset = body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }

  if (!have_fmt || data_offset == 0) {
    throw std::runtime_error("'" + path + "': missing fmt or data chunk");
  }
  if (channels < 1 || channels > 2) {
    throw std::runtime_error("'" + path + "': unsupported channel count " +
                             std::to_string(channels));
  }

  WavData wav;
  wav.spec.sample_rate = static_cast<int>(sample_rate);
  wav.spec.channels = channels;
  if (audio_format == 1 && bits == 16) {
    wav.spec.encoding = WavSpec::Encoding::kPcm16;
    const size_t count = data_size / 2;
    wav.samples.resize(count);
    for (size_t i = 0; i < count; ++i) {
      const auto lo = static_cast<unsigned char>(data[data_offset + 2 * i]);
      const auto hi =
          static_cast<unsigned char>(data[data_offset + 2 * i + 1]);
      const auto value = static_cast<int16_t>(lo | (hi << 8));
      wav.samples[i] = static_cast<float>(value) / 32768.0f;
    }
  } else if (audio_format == 3 && bits == 32) {
    wav.spec.encoding = WavSpec::Encoding::kFloat32;
    const size_t count = data_size / 4;
    wav.samples.resize(count);
    for (size_t i = 0; i < count; ++i) {
      const uint32_t raw = ReadU32(data, data_offset + 4 * i);
      wav.samples[i] = std::bit_cast<float>(raw);
    }
  } else {
    throw std::runtime_error(
        "'" + path + "': unsupported encoding (format " +
        std::to_string(audio_format) + ", " + std::to_string(bits) +
        " bits); expected PCM 16-bit or float 32-bit");
  }
  return wav;
}

void WriteWav(const std::string& path, std::span<const float> interleaved,
              const WavSpec& spec) {
  for (const float v : interleaved) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("refusing to write non-finite samples to '" +
                               path + "'");
    }
  }
  const bool is_float = spec.encoding == WavSpec::Encoding::kFloat32;
  const uint16_t bits = is_float ? 32 : 16;
  const uint16_t block_align =
      static_cast<uint16_t>(spec.channels * bits / 8);
  const uint32_t data_size =
      static_cast<uint32_t>(interleaved.size() * bits / 8);

  std::string out;
  out.reserve(data_size + 64);
  out += "RIFF";
  AppendU32(out, 0);  // patched below
  out += "WAVE";
  out += "fmt ";
  AppendU32(out, 16);
  AppendU16(out, is_float ? 3 : 1);
  AppendU16(out, static_cast<uint16_t>(spec.channels));
  AppendU32(out, static_cast<uint32_t>(spec.sample_rate));
  AppendU32(out,
            static_cast<uint32_t>(spec.sample_rate) * block_align);
  AppendU16(out, block_align);
  AppendU16(out, bits);
  if (is_float) {
    out += "fact";
    AppendU32(out, 4);
    AppendU32(out, static_cast<uint32_t>(interleaved.size() /
                                         static_cast<size_t>(spec.channels)));
  }
  out += "data";
  AppendU32(out, data_size);
  if (is_float) {
    for (const float v : interleaved) {
      AppendU32(out, std::bit_cast<uint32_t>(v));
    }
  } else {
    for (const float v : interleaved) {
      const double scaled = std::lround(
          std::clamp(static_cast<double>(v), -1.0, 32767.0 / 32768.0) *
          32768.0);
      AppendU16(out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
    }
  }
  const uint32_t riff_size = static_cast<uint32_t>(out.size() - 8);
  out[4] = static_cast<char>(riff_size & 0xff);
  out[5] = static_cast<char>((riff_size >> 8) & 0xff);
  out[6] = static_cast<char>((riff_size >> 16) & 0xff);
  out[7] = static_cast<char>((riff_size >> 24) & 0xff);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace aural
