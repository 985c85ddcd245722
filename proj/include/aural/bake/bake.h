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

#ifndef AURAL_BAKE_BAKE_H_
#define AURAL_BAKE_BAKE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aural/base/constants.h"
#include "aural/base/vec3.h"
#include "aural/geom/spatial_index.h"
#include "aural/scene/scene.h"

namespace aural {

struct BakeConfig {
  // Exactly one of these must be set.
  std::optional<int> probe_count;
  std::optional<double> probe_spacing;  // meters

  int rays_per_probe = 10000;
  int max_bounces = 200;
  double max_path_time = 3.0;    // seconds
  double histogram_bin = 0.005;  // seconds
  double energy_floor = 1e-6;    // linear
  uint64_t rng_seed = 0;
  double probe_height = 1.2;  // meters above the detected floor
  double clearance = 0.3;     // meters of required free space
  int thread_count = 0;       // 0 = AURAL_THREADS env or hardware

  // Throws std::runtime_error on violated invariants.
  void Validate() const;

  bool operator==(const BakeConfig&) const = default;
};

// Accumulated reflected energy per band over time bins of fixed width.
struct EnergyDecayHistogram {
  double bin_width = 0.0;  // seconds
  std::array<std::vector<double>, kNumBands> bins;

  double Duration() const {
    return bin_width * static_cast<double>(bins[0].size());
  }
  double TotalEnergy(size_t band) const;
};

// Baked reverberation sample point: per-band decay times, an axis-aligned
// proxy box of the surrounding room, and per-face amplitude reflection
// coefficients. Face order: -x, +x, -y, +y, -z, +z.
struct ReverbProbe {
  int id = 0;
  Vec3 position;
  std::array<double, kNumBands> rt60{};  // seconds, clamped to [0, 10]
  Aabb proxy_box;
  std::array<std::array<double, kNumBands>, 6> face_reflection{};
  std::array<bool, kNumBands> decay_warning{};  // fit range was too short

  bool operator==(const ReverbProbe&) const = default;
};

struct BakedData {
  uint64_t scene_hash = 0;
  BakeConfig config;
  std::vector<ReverbProbe> probes;

  bool operator==(const BakedData&) const = default;
};

inline constexpr double kProxyBoxMissDistance = 50.0;  // meters

// Probe positions on a grid of pitch |spacing| centered in the scene
// bounds, each at probe_height above the floor found by a downward ray,
// kept only where FreeSpace holds. With probe_count set, the spacing is
// chosen to produce at least that many candidates and the valid ones
// nearest the bounds centroid are kept. Throws when no valid probe
// exists. |index| must be built over static objects only.
std::vector<Vec3> PlaceProbes(const Scene& scene, const SpatialIndex& index,
                              const BakeConfig& config);

// Stochastic path tracing from |probe|: rays with unit per-band energy
// lose (1 - absorption) per surface hit, deposit their energy at the
// accumulated path time, and continue specularly or diffusely according
// to the material's scattering. The ray stream is a pure function of
// (config.rng_seed, probe_id, ray index).
EnergyDecayHistogram TraceEnergyDecay(const SpatialIndex& index,
                                      const Vec3& probe,
                                      const MaterialTable& materials,
                                      const BakeConfig& config, int probe_id);

// Schroeder backward integration, dB conversion and a least-squares line
// fit over the [-5, -35] dB decay range, extrapolated to 60 dB. Bands
// with no energy return 0; bands with fewer than 3 usable bins return
// 2 * histogram duration and set the warning flag.
std::array<double, kNumBands> EstimateRt60(
    const EnergyDecayHistogram& histogram,
    std::array<bool, kNumBands>* warnings = nullptr);

// Axis-aligned proxy room fit: per face, the median first-hit distance of
// 9 rays (axis direction plus 8 deterministic jitters on a 10 degree
// cone; misses count as 50 m). Face reflection is sqrt(1 - absorption) of
// the median ray's material, or 0 when the median ray escaped.
void FitProxyBox(const SpatialIndex& index, const MaterialTable& materials,
                 const Vec3& probe, Aabb* box,
                 std::array<std::array<double, kNumBands>, 6>* face_reflection);

// Full bake over the static structures of the scene. Byte-deterministic
// for fixed (scene, config) regardless of thread count.
BakedData Bake(const Scene& scene, const BakeConfig& config);

void SaveBaked(const BakedData& data, const std::string& path);
BakedData LoadBaked(const std::string& path);

// Appends a warning when |baked| was baked from a different scene.
bool VerifyBakedAgainstScene(const BakedData& baked, const Scene& scene,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace aural

#endif  // AURAL_BAKE_BAKE_H_
