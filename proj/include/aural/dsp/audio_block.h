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

#ifndef AURAL_DSP_AUDIO_BLOCK_H_
#define AURAL_DSP_AUDIO_BLOCK_H_

#include <span>
#include <vector>

#include "aural/base/logging.h"

namespace aural {

// Channel-major (planar) sample buffer.
struct AudioBlock {
  int channels = 1;
  int sample_rate = 44100;
  std::vector<float> samples;

  AudioBlock() = default;
  AudioBlock(int channels_in, int frames, int sample_rate_in)
      : channels(channels_in),
        sample_rate(sample_rate_in),
        samples(static_cast<size_t>(channels_in) *
                static_cast<size_t>(frames)) {}

  int frames() const {
    return channels > 0 ? static_cast<int>(samples.size()) / channels : 0;
  }

  std::span<float> channel(int c) {
    AURAL_DCHECK(c >= 0 && c < channels);
    return {samples.data() + static_cast<size_t>(c) *
                                 static_cast<size_t>(frames()),
            static_cast<size_t>(frames())};
  }

  std::span<const float> channel(int c) const {
    AURAL_DCHECK(c >= 0 && c < channels);
    return {samples.data() + static_cast<size_t>(c) *
                                 static_cast<size_t>(frames()),
            static_cast<size_t>(frames())};
  }
};

}  // namespace aural

#endif  // AURAL_DSP_AUDIO_BLOCK_H_
