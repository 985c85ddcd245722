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

#ifndef AURAL_BINAURAL_SPATIALIZER_H_
#define AURAL_BINAURAL_SPATIALIZER_H_

#include "aural/base/constants.h"
#include "aural/dsp/delay_line.h"

namespace aural {

enum class Ear { kLeft, kRight };

// Spherical-head interaural time difference (Woodworth): magnitude
// (r/c) (theta + sin theta) at the frontal-equivalent angle
// theta = min(|azimuth|, pi - |azimuth|). Positive result = LEFT ear
// delayed (source on the right). Azimuth is radians, positive to the
// listener's right, 0 straight ahead.
double WoodworthItdSeconds(double azimuth,
                           double head_radius = kDefaultHeadRadius,
                           double speed_of_sound = kSpeedOfSound);

// Head-shadow level cue: alpha(theta_rel) = 1.05 + 0.95 cos(theta_rel),
// theta_rel = angular distance from the ear axis. High-frequency gain
// approaches alpha while DC stays at exactly 1.
double HeadShadowAlpha(double azimuth, Ear ear);

// One-pole-one-zero discretization (bilinear) of
// (1 + j w alpha / (2 w0)) / (1 + j w / (2 w0)), w0 = c / head_radius.
struct HeadShadowCoeffs {
  double b0 = 1.0;
  double b1 = 0.0;
  double a1 = 0.0;  // y[n] = b0 x[n] + b1 x[n-1] - a1 y[n-1]
};

HeadShadowCoeffs HeadShadowForAzimuth(double azimuth, Ear ear,
                                      double head_radius, double sample_rate);

// Mono-to-stereo spatializer: fractional ITD delay on the lagging ear
// plus the per-ear head-shadow filter, with the azimuth smoothed per
// sample. Mirror symmetry is exact: processing at -azimuth produces the
// channel-swapped output bit for bit.
class Spatializer {
 public:
  Spatializer(double sample_rate, double head_radius, double smoothing_tau);

  // Stages a direction target (radians; elevation is carried for future
  // use but does not affect the v1 rendering model).
  void SetTargetDirection(double azimuth, double elevation = 0.0);

  // Jumps the smoothed azimuth to its target (initialization).
  void SnapToTarget();

  // Accumulates the spatialized signal into left/right.
  void Process(const float* mono, int n, float* left, float* right);

  void Clear();

  double smoothed_azimuth() const { return azimuth_; }

 private:
  double sample_rate_;
  double head_radius_;
  double smoothing_;  // per-sample coefficient exp(-1/(tau fs))
  double azimuth_ = 0.0;
  double azimuth_target_ = 0.0;
  double elevation_ = 0.0;
  double shadow_beta_;  // fs * r / c
  DelayLine line_;
  double left_x1_ = 0.0, left_y1_ = 0.0;
  double right_x1_ = 0.0, right_y1_ = 0.0;
};

}  // namespace aural

#endif  // AURAL_BINAURAL_SPATIALIZER_H_
