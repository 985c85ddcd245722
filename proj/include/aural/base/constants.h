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

#ifndef AURAL_BASE_CONSTANTS_H_
#define AURAL_BASE_CONSTANTS_H_

#include <array>
#include <cstddef>

namespace aural {

// Speed of sound in air, fixed throughout the engine.
inline constexpr double kSpeedOfSound = 343.0;  // m/s

// All per-band quantities use six octave bands.
inline constexpr size_t kNumBands = 6;
inline constexpr std::array<double, kNumBands> kBandCenters = {
    125.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0};

// Band edges at center * sqrt(2): 176.8, 353.6, 707.1, 1414.2, 2828.4 Hz.
inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr std::array<double, kNumBands - 1> kBandEdges = {
    125.0 * kSqrt2, 250.0 * kSqrt2, 500.0 * kSqrt2, 1000.0 * kSqrt2,
    2000.0 * kSqrt2};

inline constexpr double kDefaultHeadRadius = 0.0875;  // m

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Self-intersection guard for all raycasts (meters along the ray).
inline constexpr double kRayEpsilon = 1e-4;

}  // namespace aural

#endif  // AURAL_BASE_CONSTANTS_H_
