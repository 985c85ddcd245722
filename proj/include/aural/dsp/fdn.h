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

#ifndef AURAL_DSP_FDN_H_
#define AURAL_DSP_FDN_H_

#include <array>
#include <vector>

#include "aural/base/constants.h"

namespace aural {

inline constexpr int kFdnLines = 8;

// Mutually coprime delay lengths at 44.1 kHz; other rates scale them by
// fs / 44100 and re-round to the nearest odd integer.
inline constexpr std::array<int, kFdnLines> kFdnBaseDelays = {
    1013, 1201, 1307, 1459, 1597, 1733, 1889, 2039};

// One feedback delay network per octave band, all sharing the 8x8
// Householder feedback matrix H = I - (2/8) J (orthogonal; diagonal 0.75,
// off-diagonal -0.25). Per-line gains realize a target RT60 per band:
// g = 10^(-3 d / (fs RT60)). Band networks are fully independent; the
// only cross-band coupling in the engine comes from the input
// filterbank's overlap.
class FdnBank {
 public:
  explicit FdnBank(double sample_rate);

  // Per-band RT60 targets in seconds; gains glide toward them with the
  // configured smoothing. RT60 <= 0 mutes the band.
  void SetRt60(const std::array<double, kNumBands>& rt60);

  // Jumps gains to their targets (initialization).
  void SnapGains();

  // Per-sample one-pole smoothing coefficient in [0, 1); 0 disables
  // smoothing.
  void SetSmoothingCoeff(double coeff) { smoothing_ = coeff; }

  // Manual per-band gain override (diagnostics; bypasses the RT60 rule).
  void SetBandGain(size_t band, double gain);

  // Runs |n| samples of every band network and ACCUMULATES the wet stereo
  // into |left|/|right|: left = sum of taps / sqrt(8), right =
  // alternating-sign sum / sqrt(8). Null band pointers feed silence.
  void Process(const std::array<const float*, kNumBands>& band_inputs, int n,
               float* left, float* right);

  double InternalEnergy(size_t band) const;
  void Clear();

  const std::array<int, kFdnLines>& delay_lengths() const {
    return delay_lengths_;
  }

  static int ScaledDelayLength(int base_length, double sample_rate);
  static double GainForDelay(int delay_samples, double sample_rate,
                             double rt60);

 private:
  struct BandFdn {
    std::array<std::vector<float>, kFdnLines> lines;
    std::array<int, kFdnLines> positions{};
    std::array<double, kFdnLines> gains{};
    std::array<double, kFdnLines> gain_targets{};
  };

  double sample_rate_;
  double smoothing_ = 0.0;
  std::array<int, kFdnLines> delay_lengths_{};
  std::array<BandFdn, kNumBands> bands_;
};

}  // namespace aural

#endif  // AURAL_DSP_FDN_H_
