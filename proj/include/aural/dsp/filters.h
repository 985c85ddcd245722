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

#ifndef AURAL_DSP_FILTERS_H_
#define AURAL_DSP_FILTERS_H_

#include <array>

#include "aural/base/constants.h"

namespace aural {

struct BiquadCoeffs {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;  // normalized (a0 == 1)
};

// Transposed direct form II; coefficients and state in double.
class Biquad {
 public:
  Biquad() = default;
  explicit Biquad(const BiquadCoeffs& coeffs) : coeffs_(coeffs) {}

  void SetCoeffs(const BiquadCoeffs& coeffs) { coeffs_ = coeffs; }

  float Process(float x) {
    const double in = x;
    const double out = coeffs_.b0 * in + s1_;
    s1_ = coeffs_.b1 * in - coeffs_.a1 * out + s2_;
    s2_ = coeffs_.b2 * in - coeffs_.a2 * out;
    return static_cast<float>(out);
  }

  void Clear() { s1_ = s2_ = 0.0; }

 private:
  BiquadCoeffs coeffs_;
  double s1_ = 0.0, s2_ = 0.0;
};

BiquadCoeffs RbjLowpass(double sample_rate, double cutoff_hz, double q);
BiquadCoeffs RbjHighpass(double sample_rate, double cutoff_hz, double q);

// Fourth-order Butterworth responses as two cascaded biquads. The
// band-pass maps a second-order prototype through the band transform, so
// its -3 dB points sit exactly on the given edges.
std::array<BiquadCoeffs, 2> ButterworthLowpass4(double sample_rate,
                                                double cutoff_hz);
std::array<BiquadCoeffs, 2> ButterworthHighpass4(double sample_rate,
                                                 double cutoff_hz);
std::array<BiquadCoeffs, 2> ButterworthBandpass4(double sample_rate,
                                                 double low_edge_hz,
                                                 double high_edge_hz);

// y[n] = (1 - a) x[n] + a y[n-1], a = exp(-2 pi cutoff / fs). Out-of-range
// cutoffs clamp to [10, fs/2 - 1] and count a warning.
class OnePoleLowpass {
 public:
  explicit OnePoleLowpass(double sample_rate) : sample_rate_(sample_rate) {}

  void SetCutoff(double cutoff_hz);

  float Process(float x) {
    y_ = (1.0 - a_) * x + a_ * y_;
    return static_cast<float>(y_);
  }

  void Clear() { y_ = 0.0; }

  double coefficient() const { return a_; }
  long clamp_warnings() const { return clamp_warnings_; }

 private:
  double sample_rate_;
  double a_ = 0.0;
  double y_ = 0.0;
  long clamp_warnings_ = 0;
};

// Six-way octave split: low-pass below the first edge, four band-passes,
// high-pass above the last edge (edges at kBandCenters * sqrt(2)). Band
// magnitude responses sum close enough to unity that white noise keeps
// its energy within about a dB.
class OctaveFilterbank {
 public:
  explicit OctaveFilterbank(double sample_rate);

  void ProcessSample(float x, std::array<float, kNumBands>* out);
  void Clear();

 private:
  std::array<std::array<Biquad, 2>, kNumBands> sections_;
};

}  // namespace aural

#endif  // AURAL_DSP_FILTERS_H_
