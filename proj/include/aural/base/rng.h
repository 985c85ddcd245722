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

#ifndef AURAL_BASE_RNG_H_
#define AURAL_BASE_RNG_H_

#include <cmath>
#include <cstdint>

#include "aural/base/constants.h"
#include "aural/base/vec3.h"

namespace aural {

inline uint64_t SplitMix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic random stream keyed by (seed, stream ids). Streams with
// distinct keys are independent, so work split across threads reproduces
// the single-threaded result exactly regardless of schedule.
class RandomStream {
 public:
  RandomStream(uint64_t seed, uint64_t stream_a, uint64_t stream_b = 0) {
    uint64_t s = seed;
    state_ = SplitMix64(s);
    s = stream_a ^ 0xA3C59AC2F0534C1Dull;
    state_ ^= SplitMix64(s);
    s = stream_b ^ 0x1D8E4E27C47D124Full;
    state_ ^= SplitMix64(s);
  }

  uint64_t NextU64() { return SplitMix64(state_); }

  // Uniform in [0, 1).
  double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  Vec3 UniformSphereDirection() {
    const double z = 1.0 - 2.0 * NextDouble();
    const double phi = kTwoPi * NextDouble();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

  // Cosine-weighted direction about |normal| (assumed unit length).
  Vec3 CosineHemisphereDirection(const Vec3& normal) {
    const double u1 = NextDouble();
    const double u2 = NextDouble();
    const double r = std::sqrt(u1);
    const double phi = kTwoPi * u2;
    const double local_x = r * std::cos(phi);
    const double local_y = r * std::sin(phi);
    const double local_z = std::sqrt(std::max(0.0, 1.0 - u1));

    // Build an orthonormal basis around the normal.
    const Vec3 tangent = Normalized(
        std::fabs(normal.x) > 0.9 ? Cross(normal, Vec3{0.0, 1.0, 0.0})
                                  : Cross(normal, Vec3{1.0, 0.0, 0.0}));
    const Vec3 bitangent = Cross(normal, tangent);
    return Normalized(tangent * local_x + bitangent * local_y +
                      normal * local_z);
  }

 private:
  uint64_t state_;
};

}  // namespace aural

#endif  // AURAL_BASE_RNG_H_
