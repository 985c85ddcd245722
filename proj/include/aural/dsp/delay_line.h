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

#ifndef AURAL_DSP_DELAY_LINE_H_
#define AURAL_DSP_DELAY_LINE_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "aural/base/logging.h"

namespace aural {

// Circular buffer with linearly interpolated fractional reads. Delay 0
// addresses the most recently written sample. Reads beyond
// capacity - 2 clamp and count, instead of failing, so a mis-sized
// consumer degrades instead of corrupting memory.
class DelayLine {
 public:
  explicit DelayLine(int capacity)
      : buffer_(static_cast<size_t>(std::max(capacity, 2)), 0.0f) {}

  void Write(float sample) {
    buffer_[static_cast<size_t>(write_pos_)] = sample;
    write_pos_ = (write_pos_ + 1) % static_cast<int>(buffer_.size());
  }

  float ReadFractional(double delay) {
    const double max_delay = static_cast<double>(buffer_.size()) - 2.0;
    if (delay < 0.0 || delay > max_delay) {
      ++clamp_count_;
      delay = std::clamp(delay, 0.0, max_delay);
    }
    const int whole = static_cast<int>(delay);
    const double frac = delay - whole;
    const int size = static_cast<int>(buffer_.size());
    int i0 = write_pos_ - 1 - whole;
    i0 = ((i0 % size) + size) % size;
    int i1 = i0 - 1;
    if (i1 < 0) i1 += size;
    const float s0 = buffer_[static_cast<size_t>(i0)];
    const float s1 = buffer_[static_cast<size_t>(i1)];
    return static_cast<float>(s0 + frac * (s1 - s0));
  }

  void Clear() {
    std::fill(buffer_.begin(), buffer_.end(), 0.0f);
    write_pos_ = 0;
  }

  int capacity() const { return static_cast<int>(buffer_.size()); }
  long clamp_count() const { return clamp_count_; }

 private:
  std::vector<float> buffer_;
  int write_pos_ = 0;
  long clamp_count_ = 0;
};

}  // namespace aural

#endif  // AURAL_DSP_DELAY_LINE_H_
