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

#include "aural/dsp/fdn.h"

#include <cmath>

#include "aural/base/logging.h"

namespace aural {
namespace {

const double kInvSqrtLines = 1.0 / std::sqrt(static_cast<double>(kFdnLines));

}  // namespace

int FdnBank::ScaledDelayLength(int base_length, double sample_rate) {
  const double scaled = base_length * sample_rate / 44100.0;
  long long nearest = std::llround(scaled);
  if (nearest % 2 == 0) {
    // Re-round to the nearest odd value; ties go up.
    nearest += (scaled >= static_cast<double>(nearest)) ? 1 : -1;
  }
  return static_cast<int>(std::max(nearest, 3ll));
}

double FdnBank::GainForDelay(int delay_samples, double sample_rate,
                             double rt60) {
  if (rt60 <= 0.0) return 0.0;
  return std::pow(10.0, -3.0 * delay_samples / (sample_rate * rt60));
}

FdnBank::FdnBank(double sample_rate) : sample_rate_(sample_rate) {
  AURAL_CHECK(sample_rate > 0.0);
  for (int i = 0; i < kFdnLines; ++i) {
    delay_lengths_[static_cast<size_t>(i)] =
        ScaledDelayLength(kFdnBaseDelays[static_cast<size_t>(i)],
                          sample_rate);
  }
  for (auto& band : bands_) {
    for (int i = 0; i < kFdnLines; ++i) {
      band.lines[static_cast<size_t>(i)].assign(
          static_cast<size_t>(delay_lengths_[static_cast<size_t>(i)]), 0.0f);
    }
  }
}

void FdnBank::SetRt60(const std::array<double, kNumBands>& rt60) {
  for (size_t band = 0; band < kNumBands; ++band) {
    for (size_t i = 0; i < kFdnLines; ++i) {
      bands_[band].gain_targets[i] =
          GainForDelay(delay_lengths_[i], sample_rate_, rt60[band]);
    }
  }
}

void FdnBank::SnapGains() {
  for (auto& band : bands_) band.gains = band.gain_targets;
}

void FdnBank::SetBandGain(size_t band, double gain) {
  AURAL_CHECK(band < kNumBands);
  bands_[band].gains.fill(gain);
  bands_[band].gain_targets.fill(gain);
}

void FdnBank::Process(const std::array<const float*, kNumBands>& band_inputs,
                      int n, float* left, float* right) {
  const double rate = 1.0 - smoothing_;
  for (size_t band = 0; band < kNumBands; ++band) {
    BandFdn& fdn = bands_[band];
    const float* input = band_inputs[band];
    for (int sample = 0; sample < n; ++sample) {
      const double x = input != nullptr ? input[sample] : 0.0;

      double taps[kFdnLines];
      double tap_sum = 0.0;
      double tap_alt = 0.0;
      double weighted_sum = 0.0;
      for (size_t i = 0; i < kFdnLines; ++i) {
        fdn.gains[i] += (fdn.gain_targets[i] - fdn.gains[i]) * rate;
        const double out =
            fdn.lines[i][static_cast<size_t>(fdn.positions[i])];
        taps[i] = out;
        tap_sum += out;
        tap_alt += (i % 2 == 0) ? out : -out;
        weighted_sum += fdn.gains[i] * out;
      }
      // Householder mix: H w = w - (2/8) (sum w) 1.
      const double mix_offset = 0.25 * weighted_sum;
      for (size_t i = 0; i < kFdnLines; ++i) {
        const double mixed = fdn.gains[i] * taps[i] - mix_offset + x;
        fdn.lines[i][static_cast<size_t>(fdn.positions[i])] =
            static_cast<float>(mixed);
        fdn.positions[i] =
            (fdn.positions[i] + 1) % static_cast<int>(fdn.lines[i].size());
      }
      left[sample] += static_cast<float>(tap_sum * kInvSqrtLines);
      right[sample] += static_cast<float>(tap_alt * kInvSqrtLines);
    }
  }
}

double FdnBank::InternalEnergy(size_t band) const {
  AURAL_CHECK(band < kNumBands);
  double energy = 0.0;
  for (const auto& line : bands_[band].lines) {
    for (const float sample : line) {
      energy += static_cast<double>(sample) * static_cast<double>(sample);
    }
  }
  return energy;
}

void FdnBank::Clear() {
  for (auto& band : bands_) {
    for (auto& line : band.lines) {
      std::fill(line.begin(), line.end(), 0.0f);
    }
    band.positions.fill(0);
  }
}

}  // namespace aural
