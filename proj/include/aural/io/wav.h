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

#ifndef AURAL_IO_WAV_H_
#define AURAL_IO_WAV_H_

#include <span>
#include <string>
#include <vector>

namespace aural {

struct WavSpec {
  int sample_rate = 44100;
  int channels = 1;  // 1 or 2
  enum class Encoding { kPcm16, kFloat32 } encoding = Encoding::kFloat32;
};

struct WavData {
  WavSpec spec;
  std::vector<float> samples;  // interleaved

  int frames() const {
    return spec.channels > 0
               ? static_cast<int>(samples.size()) / spec.channels
               : 0;
  }
};

// RIFF/WAVE, little-endian, PCM 16-bit or IEEE float 32-bit only.
// 16-bit samples normalize to [-1, 1) via division by 32768. No
// resampling anywhere: rate mismatches are the caller's error to raise.
WavData ReadWav(const std::string& path);

void WriteWav(const std::string& path, std::span<const float> interleaved,
              const WavSpec& spec);

}  // namespace aural

#endif  // AURAL_IO_WAV_H_
