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

#include "aural/binaural/spatializer.h"

#include <cmath>

#include "aural/base/logging.h"

namespace aural {
namespace {

// Delay capacity: maximum Woodworth ITD plus interpolation headroom.
int DelayCapacity(double sample_rate, double head_radius) {
  const double max_itd = (head_radius / kSpeedOfSound) * (kPi / 2.0 + 1.0);
  return static_cast<int>(max_itd * sample_rate) + 8;
}

}  // namespace

double WoodworthItdSeconds(double azimuth, double head_radius,
                           double speed_of_sound) {
  const double wrapped = std::remainder(azimuth, kTwoPi);
  const double theta = std::fabs(wrapped);
  // Rear sources fold to their frontal-equivalent lateral angle.
  const double frontal = std::min(theta, kPi - theta);
  const double magnitude =
      (head_radius / speed_of_sound) * (frontal + std::sin(frontal));
  return wrapped < 0.0 ? -magnitude : magnitude;
}

double HeadShadowAlpha(double azimuth, Ear ear) {
  // cos(theta_rel) with theta_rel measured from the ear axis reduces to
  // +-sin(azimuth); the remainder keeps the expression exactly odd in
  // azimuth so mirrored directions swap ears bit for bit.
  const double wrapped = std::remainder(azimuth, kTwoPi);
  const double s = std::sin(wrapped);
  return ear == Ear::kRight ? 1.05 + 0.95 * s : 1.05 - 0.95 * s;
}

HeadShadowCoeffs HeadShadowForAzimuth(double azimuth, Ear ear,
                                      double head_radius,
                                      double sample_rate) {
  const double alpha = HeadShadowAlpha(azimuth, ear);
  const double beta = sample_rate * head_radius / kSpeedOfSound;
  HeadShadowCoeffs c;
  const double a0 = 1.0 + beta;
  c.b0 = (1.0 + alpha * beta) / a0;
  c.b1 = (1.0 - alpha * beta) / a0;
  c.a1 = (1.0 - beta) / a0;
  return c;
}

Spatializer::Spatializer(double sample_rate, double head_radius,
                         double smoothing_tau)
    : sample_rate_(sample_rate),
      head_radius_(head_radius),
      smoothing_(std::exp(-1.0 / (smoothing_tau * sample_rate))),
      shadow_beta_(sample_rate * head_radius / kSpeedOfSound),
      line_(DelayCapacity(sample_rate, head_radius)) {
  AURAL_CHECK(sample_rate > 0.0 && head_radius > 0.0 && smoothing_tau > 0.0);
}

void Spatializer::SetTargetDirection(double azimuth, double elevation) {
  // Approach along the shortest arc from the current smoothed value.
  azimuth_target_ = azimuth_ + std::remainder(azimuth - azimuth_, kTwoPi);
  elevation_ = elevation;
}

void Spatializer::SnapToTarget() {
  azimuth_ = std::remainder(azimuth_target_, kTwoPi);
  azimuth_target_ = azimuth_;
}

void Spatializer::Process(const float* mono, int n, float* left,
                          float* right) {
  const double rate = 1.0 - smoothing_;
  const double itd_scale = (head_radius_ / kSpeedOfSound) * sample_rate_;
  for (int i = 0; i < n; ++i) {
    azimuth_ += (azimuth_target_ - azimuth_) * rate;
    const double wrapped = std::remainder(azimuth_, kTwoPi);
    const double theta = std::fabs(wrapped);
    const double frontal = std::min(theta, kPi - theta);
    const double itd_samples = itd_scale * (frontal + std::sin(frontal));
    // Only the lagging ear is delayed; positive azimuth lags the left.
    const double delay_left = wrapped > 0.0 ? itd_samples : 0.0;
    const double delay_right = wrapped < 0.0 ? itd_samples : 0.0;

    line_.Write(mono[i]);
    const double in_left = line_.ReadFractional(delay_left);
    const double in_right = line_.ReadFractional(delay_right);

    const double s = std::sin(wrapped);
    const double alpha_right = 1.05 + 0.95 * s;
    const double alpha_left = 1.05 - 0.95 * s;

    const double a0 = 1.0 + shadow_beta_;
    const double pole = (1.0 - shadow_beta_) / a0;

    const double out_left = ((1.0 + alpha_left * shadow_beta_) * in_left +
                             (1.0 - alpha_left * shadow_beta_) * left_x1_) /
                                a0 -
                            pole * left_y1_;
    left_x1_ = in_left;
    left_y1_ = out_left;

    const double out_right =
        ((1.0 + alpha_right * shadow_beta_) * in_right +
         (1.0 - alpha_right * shadow_beta_) * right_x1_) /
            a0 -
        pole * right_y1_;
    right_x1_ = in_right;
    right_y1_ = out_right;

    left[i] += static_cast<float>(out_left);
    right[i] += static_cast<float>(out_right);
  }
}

void Spatializer::Clear() {
  line_.Clear();
  left_x1_ = left_y1_ = 0.0;
  right_x1_ = right_y1_ = 0.0;
}

}  // namespace aural
