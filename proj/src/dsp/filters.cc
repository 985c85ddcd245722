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

#include "aural/dsp/filters.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "aural/base/logging.h"

namespace aural {
namespace {

using Complex = std::complex<double>;

// Butterworth section Q values for a 4th-order cascade.
constexpr double kButter4Q1 = 0.54119610014619698;
constexpr double kButter4Q2 = 1.3065629648763765;

// |H(e^{j 2 pi f / fs})| of a biquad cascade.
double CascadeMagnitude(const std::array<BiquadCoeffs, 2>& sections,
                        double frequency, double sample_rate) {
  const double w = kTwoPi * frequency / sample_rate;
  const Complex z_inv = std::exp(Complex(0.0, -w));
  Complex h(1.0, 0.0);
  for (const auto& s : sections) {
    const Complex num = s.b0 + s.b1 * z_inv + s.b2 * z_inv * z_inv;
    const Complex den = 1.0 + s.a1 * z_inv + s.a2 * z_inv * z_inv;
    h *= num / den;
  }
  return std::abs(h);
}

}  // namespace

BiquadCoeffs RbjLowpass(double sample_rate, double cutoff_hz, double q) {
  const double w0 = kTwoPi * cutoff_hz / sample_rate;
  const double cw = std::cos(w0);
  const double sw = std::sin(w0);
  const double alpha = sw / (2.0 * q);
  const double a0 = 1.0 + alpha;
  BiquadCoeffs c;
  c.b0 = ((1.0 - cw) / 2.0) / a0;
  c.b1 = (1.0 - cw) / a0;
  c.b2 = c.b0;
  c.a1 = (-2.0 * cw) / a0;
  c.a2 = (1.0 - alpha) / a0;
  return c;
}

BiquadCoeffs RbjHighpass(double sample_rate, double cutoff_hz, double q) {
  const double w0 = kTwoPi * cutoff_hz / sample_rate;
  const double cw = std::cos(w0);
  const double sw = std::sin(w0);
  const double alpha = sw / (2.0 * q);
  const double a0 = 1.0 + alpha;
  BiquadCoeffs c;
  c.b0 = ((1.0 + cw) / 2.0) / a0;
  c.b1 = (-(1.0 + cw)) / a0;
  c.b2 = c.b0;
  c.a1 = (-2.0 * cw) / a0;
  c.a2 = (1.0 - alpha) / a0;
  return c;
}

std::array<BiquadCoeffs, 2> ButterworthLowpass4(double sample_rate,
                                                double cutoff_hz) {
  return {RbjLowpass(sample_rate, cutoff_hz, kButter4Q1),
          RbjLowpass(sample_rate, cutoff_hz, kButter4Q2)};
}

std::array<BiquadCoeffs, 2> ButterworthHighpass4(double sample_rate,
                                                 double cutoff_hz) {
  return {RbjHighpass(sample_rate, cutoff_hz, kButter4Q1),
          RbjHighpass(sample_rate, cutoff_hz, kButter4Q2)};
}

std::array<BiquadCoeffs, 2> ButterworthBandpass4(double sample_rate,
                                                 double low_edge_hz,
                                                 double high_edge_hz) {
  AURAL_CHECK(low_edge_hz > 0.0 && high_edge_hz > low_edge_hz);
  AURAL_CHECK(high_edge_hz < sample_rate / 2.0);

  // Prewarped analog edges and the low-pass-to-band-pass transform of a
  // second-order Butterworth prototype (poles at exp(+-j 3 pi / 4)).
  const double k = 2.0 * sample_rate;
  const double warped_low = k * std::tan(kPi * low_edge_hz / sample_rate);
  const double warped_high = k * std::tan(kPi * high_edge_hz / sample_rate);
  const double w0_sq = warped_low * warped_high;
  const double bandwidth = warped_high - warped_low;

  const Complex prototype_pole =
      std::exp(Complex(0.0, 3.0 * kPi / 4.0));
  const Complex bp = bandwidth * prototype_pole;
  const Complex root = std::sqrt(bp * bp - 4.0 * w0_sq);
  const Complex pole_a = (bp + root) / 2.0;
  const Complex pole_b = (bp - root) / 2.0;

  std::array<BiquadCoeffs, 2> sections;
  const Complex poles[2] = {pole_a, pole_b};
  for (int i = 0; i < 2; ++i) {
    // Analog section s / (s^2 - 2 Re(p) s + |p|^2), bilinear-transformed.
    const double re = poles[i].real();
    const double mag_sq = std::norm(poles[i]);
    const double a0 = k * k - 2.0 * re * k + mag_sq;
    BiquadCoeffs c;
    c.b0 = k / a0;
    c.b1 = 0.0;
    c.b2 = -k / a0;
    c.a1 = 2.0 * (mag_sq - k * k) / a0;
    c.a2 = (k * k + 2.0 * re * k + mag_sq) / a0;
    sections[static_cast<size_t>(i)] = c;
  }

  // Normalize to unit gain at the geometric center frequency.
  const double center = std::sqrt(low_edge_hz * high_edge_hz);
  const double gain = CascadeMagnitude(sections, center, sample_rate);
  AURAL_CHECK(gain > 0.0);
  sections[0].b0 /= gain;
  sections[0].b2 /= gain;
  return sections;
}

void OnePoleLowpass::SetCutoff(double cutoff_hz) {
  const double max_cutoff = sample_rate_ / 2.0 - 1.0;
  if (cutoff_hz < 10.0 || cutoff_hz > max_cutoff) {
    ++clamp_warnings_;
    cutoff_hz = std::clamp(cutoff_hz, 10.0, max_cutoff);
  }
  a_ = std::exp(-kTwoPi * cutoff_hz / sample_rate_);
}

OctaveFilterbank::OctaveFilterbank(double sample_rate) {
  AURAL_CHECK(sample_rate >= 16000.0);
  const auto assign = [this](size_t band,
                             const std::array<BiquadCoeffs, 2>& coeffs) {
    sections_[band][0].SetCoeffs(coeffs[0]);
    sections_[band][1].SetCoeffs(coeffs[1]);
  };
  assign(0, ButterworthLowpass4(sample_rate, kBandEdges[0]));
  for (size_t band = 1; band + 1 < kNumBands; ++band) {
    assign(band, ButterworthBandpass4(sample_rate, kBandEdges[band - 1],
                                      kBandEdges[band]));
  }
  assign(kNumBands - 1,
         ButterworthHighpass4(sample_rate, kBandEdges[kNumBands - 2]));
}

void OctaveFilterbank::ProcessSample(float x,
                                     std::array<float, kNumBands>* out) {
  for (size_t band = 0; band < kNumBands; ++band) {
    (*out)[band] = sections_[band][1].Process(sections_[band][0].Process(x));
  }
}

void OctaveFilterbank::Clear() {
  for (auto& band : sections_) {
    band[0].Clear();
    band[1].Clear();
  }
}

}  // namespace aural
