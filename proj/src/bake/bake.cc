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

#include "aural/bake/bake.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "aural/base/logging.h"
#include "aural/base/parallel.h"
#include "aural/base/rng.h"

namespace aural {
namespace {

constexpr double kRt60Cap = 10.0;  // seconds
constexpr double kFitRangeHighDb = -5.0;
constexpr double kFitRangeLowDb = -35.0;
constexpr double kJitterConeRadians = 10.0 * kPi / 180.0;

const std::array<Vec3, 6> kFaceDirections = {
    Vec3{-1, 0, 0}, Vec3{1, 0, 0},  Vec3{0, -1, 0},
    Vec3{0, 1, 0},  Vec3{0, 0, -1}, Vec3{0, 0, 1}};

// Grid of pitch |spacing| centered within [0, extent]; a single centered
// point when the extent is smaller than the spacing.
std::vector<double> GridPositions(double min, double extent, double spacing) {
  const int n =
      std::max(1, static_cast<int>(std::floor(extent / spacing + 1e-9)));
  const double offset = (extent - (n - 1) * spacing) / 2.0;
  std::vector<double> positions;
  positions.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    positions.push_back(min + offset + i * spacing);
  }
  return positions;
}

struct Candidate {
  Vec3 position;
  double centroid_distance2;
};

}  // namespace

void BakeConfig::Validate() const {
  if (probe_count.has_value() == probe_spacing.has_value()) {
    throw std::runtime_error(
        "exactly one of probe_count and probe_spacing must be set");
  }
  if (probe_count && *probe_count < 1) {
    throw std::runtime_error("probe_count must be >= 1");
  }
  if (probe_spacing && !(*probe_spacing > 0.0)) {
    throw std::runtime_error("probe_spacing must be > 0");
  }
  if (rays_per_probe < 100) {
    throw std::runtime_error("rays_per_probe must be >= 100");
  }
  if (!(histogram_bin > 0.0 && histogram_bin <= 0.05)) {
    throw std::runtime_error("histogram_bin must lie in (0, 0.05] s");
  }
  if (max_bounces < 1) throw std::runtime_error("max_bounces must be >= 1");
  if (!(max_path_time > 0.0)) {
    throw std::runtime_error("max_path_time must be > 0");
  }
  if (!(energy_floor > 0.0)) {
    throw std::runtime_error("energy_floor must be > 0");
  }
}

double EnergyDecayHistogram::TotalEnergy(size_t band) const {
  double total = 0.0;
  for (const double e : bins[band]) total += e;
  return total;
}

std::vector<Vec3> PlaceProbes(const Scene& scene, const SpatialIndex& index,
                              const BakeConfig& config) {
  config.Validate();
  const Aabb bounds = index.bounds();
  if (!bounds.IsValid()) {
    throw std::runtime_error("probe placement: scene has no static geometry");
  }
  const double extent_x = bounds.max.x - bounds.min.x;
  const double extent_y = bounds.max.y - bounds.min.y;

  double spacing = 0.0;
  if (config.probe_spacing) {
    spacing = *config.probe_spacing;
  } else {
    // Pick a spacing whose grid yields at least probe_count candidates.
    const double area = std::max(extent_x, 0.01) * std::max(extent_y, 0.01);
    spacing = std::sqrt(area / static_cast<double>(*config.probe_count));
    spacing = std::max(spacing, 0.05);
    for (int iter = 0; iter < 64; ++iter) {
      const size_t nx = GridPositions(0, extent_x, spacing).size();
      const size_t ny = GridPositions(0, extent_y, spacing).size();
      if (nx * ny >= static_cast<size_t>(*config.probe_count)) break;
      spacing *= 0.85;
    }
  }

  const auto xs = GridPositions(bounds.min.x, extent_x, spacing);
  const auto ys = GridPositions(bounds.min.y, extent_y, spacing);
  const double drop_start = bounds.max.z - 1e-3;
  const double drop_range = (bounds.max.z - bounds.min.z) + 1.0;

  std::vector<Candidate> valid;
  const Vec3 centroid = bounds.Center();
  for (const double y : ys) {
    for (const double x : xs) {
      const auto floor_hit = index.RaycastFirst(
          {{x, y, drop_start}, {0.0, 0.0, -1.0}, drop_range});
      if (!floor_hit) continue;
      const double floor_z = drop_start - floor_hit->t;
      const Vec3 probe{x, y, floor_z + config.probe_height};
      if (!index.FreeSpace(probe, config.clearance)) continue;
      valid.push_back({probe, SquaredNorm(probe - centroid)});
    }
  }
  if (valid.empty()) {
    throw std::runtime_error(
        "probe placement found no valid position; reduce clearance or "
        "probe spacing");
  }

  if (config.probe_count) {
    std::stable_sort(valid.begin(), valid.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.centroid_distance2 != b.centroid_distance2) {
                         return a.centroid_distance2 < b.centroid_distance2;
                       }
                       if (a.position.x != b.position.x) {
                         return a.position.x < b.position.x;
                       }
                       return a.position.y < b.position.y;
                     });
    if (valid.size() > static_cast<size_t>(*config.probe_count)) {
      valid.resize(static_cast<size_t>(*config.probe_count));
    }
  }

  std::vector<Vec3> probes;
  probes.reserve(valid.size());
  for (const auto& candidate : valid) probes.push_back(candidate.position);
  return probes;
}

EnergyDecayHistogram TraceEnergyDecay(const SpatialIndex& index,
                                      const Vec3& probe,
                                      const MaterialTable& materials,
                                      const BakeConfig& config, int probe_id) {
  EnergyDecayHistogram histogram;
  histogram.bin_width = config.histogram_bin;
  const size_t n_bins = static_cast<size_t>(
      std::ceil(config.max_path_time / config.histogram_bin));
  for (auto& band : histogram.bins) band.assign(n_bins, 0.0);

  for (int ray_index = 0; ray_index < config.rays_per_probe; ++ray_index) {
    RandomStream rng(config.rng_seed, static_cast<uint64_t>(probe_id),
                     static_cast<uint64_t>(ray_index));
    Vec3 origin = probe;
    Vec3 direction = rng.UniformSphereDirection();
    std::array<double, kNumBands> energy;
    energy.fill(1.0);
    double time = 0.0;

    for (int bounce = 0; bounce < config.max_bounces; ++bounce) {
      const auto hit = index.RaycastFirst({origin, direction, 1e9});
      if (!hit) break;  // escaped the scene

      time += hit->t / kSpeedOfSound;
      if (time > config.max_path_time) break;

      const AcousticMaterial& material = materials.material(hit->material);
      bool any_alive = false;
      const size_t bin =
          std::min(static_cast<size_t>(time / config.histogram_bin),
                   n_bins - 1);
      for (size_t b = 0; b < kNumBands; ++b) {
        energy[b] *= (1.0 - material.absorption[b]);
        histogram.bins[b][bin] += energy[b];
        if (energy[b] >= config.energy_floor) any_alive = true;
      }
      if (!any_alive) break;

      // One direction is drawn for all bands; the diffuse probability is
      // the material's mean scattering.
      double mean_scattering = 0.0;
      for (const double s : material.scattering) mean_scattering += s;
      mean_scattering /= static_cast<double>(kNumBands);

      origin = origin + direction * hit->t;
      if (rng.NextDouble() >= mean_scattering) {
        direction =
            direction - hit->normal * (2.0 * Dot(direction, hit->normal));
        direction = Normalized(direction);
      } else {
        direction = rng.CosineHemisphereDirection(hit->normal);
      }
    }
  }
  return histogram;
}

std::array<double, kNumBands> EstimateRt60(
    const EnergyDecayHistogram& histogram,
    std::array<bool, kNumBands>* warnings) {
  std::array<double, kNumBands> rt60{};
  if (warnings != nullptr) warnings->fill(false);
  const size_t n_bins = histogram.bins[0].size();

  for (size_t band = 0; band < kNumBands; ++band) {
    // Schroeder backward integration.
    std::vector<double> schroeder(n_bins, 0.0);
    double running = 0.0;
    for (size_t k = n_bins; k-- > 0;) {
      running += histogram.bins[band][k];
      schroeder[k] = running;
    }
    if (!(running > 0.0)) {
      rt60[band] = 0.0;
      continue;
    }

    // Least-squares line over the [-5, -35] dB stretch of the decay.
    double sum_t = 0.0, sum_l = 0.0, sum_tt = 0.0, sum_tl = 0.0;
    int count = 0;
    for (size_t k = 0; k < n_bins; ++k) {
      if (!(schroeder[k] > 0.0)) break;
      const double level = 10.0 * std::log10(schroeder[k] / running);
      if (level > kFitRangeHighDb) continue;
      if (level < kFitRangeLowDb) break;
      const double t = (static_cast<double>(k) + 0.5) * histogram.bin_width;
      sum_t += t;
      sum_l += level;
      sum_tt += t * t;
      sum_tl += t * level;
      ++count;
    }
    if (count < 3) {
      rt60[band] = std::clamp(2.0 * histogram.Duration(), 0.0, kRt60Cap);
      if (warnings != nullptr) (*warnings)[band] = true;
      continue;
    }
    const double denom = count * sum_tt - sum_t * sum_t;
    const double slope =
        denom != 0.0 ? (count * sum_tl - sum_t * sum_l) / denom : 0.0;
    if (!(slope < -1e-9)) {
      rt60[band] = kRt60Cap;
      if (warnings != nullptr) (*warnings)[band] = true;
      continue;
    }
    rt60[band] = std::clamp(60.0 / -slope, 0.0, kRt60Cap);
  }
  return rt60;
}

void FitProxyBox(const SpatialIndex& index, const MaterialTable& materials,
                 const Vec3& probe, Aabb* box,
                 std::array<std::array<double, kNumBands>, 6>*
                     face_reflection) {
  std::array<double, 6> face_distance{};
  for (int face = 0; face < 6; ++face) {
    const Vec3 axis = kFaceDirections[static_cast<size_t>(face)];
    // Deterministic jitter pattern: the axis plus 8 directions on a
    // 10 degree cone at 45 degree azimuth steps.
    const Vec3 u = Normalized(std::fabs(axis.z) < 0.9
                                  ? Cross(axis, Vec3{0, 0, 1})
                                  : Cross(axis, Vec3{1, 0, 0}));
    const Vec3 v = Cross(axis, u);
    struct Sample {
      double distance;
      int material;  // -1 for a miss
      int ray;
    };
    std::vector<Sample> samples;
    samples.reserve(9);
    for (int ray = 0; ray < 9; ++ray) {
      Vec3 direction = axis;
      if (ray > 0) {
        const double phi = (ray - 1) * (kTwoPi / 8.0);
        direction = Normalized(
            axis * std::cos(kJitterConeRadians) +
            (u * std::cos(phi) + v * std::sin(phi)) *
                std::sin(kJitterConeRadians));
      }
      const auto hit =
          index.RaycastFirst({probe, direction, kProxyBoxMissDistance});
      if (hit) {
        samples.push_back({hit->t, hit->material, ray});
      } else {
        samples.push_back({kProxyBoxMissDistance, -1, ray});
      }
    }
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) {
                if (a.distance != b.distance) return a.distance < b.distance;
                return a.ray < b.ray;
              });
    const Sample& median = samples[4];
    face_distance[static_cast<size_t>(face)] = median.distance;
    auto& reflection = (*face_reflection)[static_cast<size_t>(face)];
    if (median.material >= 0) {
      const AcousticMaterial& material = materials.material(median.material);
      for (size_t b = 0; b < kNumBands; ++b) {
        reflection[b] = std::sqrt(
            std::max(0.0, 1.0 - material.absorption[b]));
      }
    } else {
      reflection.fill(0.0);  // open face: no reflection
    }
  }
  box->min = probe - Vec3{face_distance[0], face_distance[2],
                          face_distance[4]};
  box->max = probe + Vec3{face_distance[1], face_distance[3],
                          face_distance[5]};
}

BakedData Bake(const Scene& scene, const BakeConfig& config) {
  config.Validate();
  const SpatialIndex index = SpatialIndex::Build(scene, /*static_only=*/true);
  const std::vector<Vec3> positions = PlaceProbes(scene, index, config);

  BakedData data;
  data.scene_hash = SceneContentHash(scene);
  data.config = config;
  data.config.thread_count = 0;  // execution knob, not part of the result
  data.probes.resize(positions.size());

  // Probes are independent; each result lands in its own slot, so the
  // output does not depend on the parallel schedule.
  const int threads = ResolveThreadCount(config.thread_count);
  ParallelFor(threads, positions.size(), [&](size_t p) {
    ReverbProbe probe;
    probe.id = static_cast<int>(p);
    probe.position = positions[p];
    const EnergyDecayHistogram histogram = TraceEnergyDecay(
        index, probe.position, scene.material_table, config, probe.id);
    probe.rt60 = EstimateRt60(histogram, &probe.decay_warning);
    FitProxyBox(index, scene.material_table, probe.position, &probe.proxy_box,
                &probe.face_reflection);
    data.probes[p] = probe;
  });
  return data;
}

namespace {

constexpr char kBakedMagic[4] = {'A', 'B', 'K', '1'};
constexpr uint32_t kBakedVersion = 1;

void AppendU32(std::string& out, uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

void AppendU64(std::string& out, uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
  }
}

void AppendF64(std::string& out, double value) {
  AppendU64(out, std::bit_cast<uint64_t>(value));
}

class Reader {
 public:
  Reader(const std::string& data, size_t offset) : data_(data), pos_(offset) {}

  uint32_t ReadU32() {
    Require(4);
    uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      value |= static_cast<uint32_t>(
                   static_cast<unsigned char>(data_[pos_ + i]))
               << (8 * i);
    }
    pos_ += 4;
    return value;
  }

  uint64_t ReadU64() {
    Require(8);
    uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
      value |= static_cast<uint64_t>(
                   static_cast<unsigned char>(data_[pos_ + i]))
               << (8 * i);
    }
    pos_ += 8;
    return value;
  }

  double ReadF64() { return std::bit_cast<double>(ReadU64()); }

  uint8_t ReadU8() {
    Require(1);
    return static_cast<uint8_t>(data_[pos_++]);
  }

 private:
  void Require(size_t n) {
    if (pos_ + n > data_.size()) {
      throw std::runtime_error("truncated baked file: expected " +
                               std::to_string(pos_ + n) + " bytes, found " +
                               std::to_string(data_.size()));
    }
  }

  const std::string& data_;
  size_t pos_;
};

}  // namespace

void SaveBaked(const BakedData& data, const std::string& path) {
  std::string payload;
  AppendU64(payload, data.scene_hash);
  payload.push_back(data.config.probe_count ? 0 : 1);
  AppendF64(payload, data.config.probe_count
                         ? static_cast<double>(*data.config.probe_count)
                         : *data.config.probe_spacing);
  AppendU32(payload, static_cast<uint32_t>(data.config.rays_per_probe));
  AppendU32(payload, static_cast<uint32_t>(data.config.max_bounces));
  AppendF64(payload, data.config.max_path_time);
  AppendF64(payload, data.config.histogram_bin);
  AppendF64(payload, data.config.energy_floor);
  AppendU64(payload, data.config.rng_seed);
  AppendF64(payload, data.config.probe_height);
  AppendF64(payload, data.config.clearance);
  AppendU32(payload, static_cast<uint32_t>(data.probes.size()));
  for (const auto& probe : data.probes) {
    AppendU32(payload, static_cast<uint32_t>(probe.id));
    AppendF64(payload, probe.position.x);
    AppendF64(payload, probe.position.y);
    AppendF64(payload, probe.position.z);
    for (const double r : probe.rt60) AppendF64(payload, r);
    AppendF64(payload, probe.proxy_box.min.x);
    AppendF64(payload, probe.proxy_box.min.y);
    AppendF64(payload, probe.proxy_box.min.z);
    AppendF64(payload, probe.proxy_box.max.x);
    AppendF64(payload, probe.proxy_box.max.y);
    AppendF64(payload, probe.proxy_box.max.z);
    for (const auto& face : probe.face_reflection) {
      for (const double r : face) AppendF64(payload, r);
    }
    uint8_t warning_bits = 0;
    for (size_t b = 0; b < kNumBands; ++b) {
      if (probe.decay_warning[b]) warning_bits |= (1u << b);
    }
    payload.push_back(static_cast<char>(warning_bits));
  }

  std::string file;
  file.append(kBakedMagic, 4);
  AppendU32(file, kBakedVersion);
  AppendU64(file, payload.size());
  file += payload;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out.write(file.data(), static_cast<std::streamsize>(file.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

BakedData LoadBaked(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open baked file '" + path + "'");
  }
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  if (contents.size() < 16 || contents.compare(0, 4, kBakedMagic, 4) != 0) {
    throw std::runtime_error("'" + path + "' is not a baked data file");
  }
  Reader header(contents, 4);
  const uint32_t version = header.ReadU32();
  if (version != kBakedVersion) {
    throw std::runtime_error("unsupported baked file version " +
                             std::to_string(version));
  }
  const uint64_t payload_size = header.ReadU64();
  if (contents.size() - 16 != payload_size) {
    throw std::runtime_error(
        "truncated baked file: expected " + std::to_string(payload_size) +
        " payload bytes, found " + std::to_string(contents.size() - 16));
  }

  Reader reader(contents, 16);
  BakedData data;
  data.scene_hash = reader.ReadU64();
  const uint8_t mode = reader.ReadU8();
  const double probe_value = reader.ReadF64();
  if (mode == 0) {
    data.config.probe_count = static_cast<int>(probe_value);
  } else {
    data.config.probe_spacing = probe_value;
  }
  data.config.rays_per_probe = static_cast<int>(reader.ReadU32());
  data.config.max_bounces = static_cast<int>(reader.ReadU32());
  data.config.max_path_time = reader.ReadF64();
  data.config.histogram_bin = reader.ReadF64();
  data.config.energy_floor = reader.ReadF64();
  data.config.rng_seed = reader.ReadU64();
  data.config.probe_height = reader.ReadF64();
  data.config.clearance = reader.ReadF64();
  const uint32_t probe_count = reader.ReadU32();
  data.probes.resize(probe_count);
  for (auto& probe : data.probes) {
    probe.id = static_cast<int>(reader.ReadU32());
    probe.position = {reader.ReadF64(), reader.ReadF64(), reader.ReadF64()};
    for (auto& r : probe.rt60) r = reader.ReadF64();
    probe.proxy_box.min = {reader.ReadF64(), reader.ReadF64(),
                           reader.ReadF64()};
    probe.proxy_box.max = {reader.ReadF64(), reader.ReadF64(),
                           reader.ReadF64()};
    for (auto& face : probe.face_reflection) {
      for (auto& r : face) r = reader.ReadF64();
    }
    const uint8_t warning_bits = reader.ReadU8();
    for (size_t b = 0; b < kNumBands; ++b) {
      probe.decay_warning[b] = (warning_bits >> b) & 1u;
    }
  }
  if (data.probes.empty()) {
    throw std::runtime_error("baked file '" + path + "' contains no probes");
  }
  return data;
}

bool VerifyBakedAgainstScene(const BakedData& baked, const Scene& scene,
                             std::vector<std::string>* warnings) {
  if (baked.scene_hash == SceneContentHash(scene)) return true;
  if (warnings != nullptr) {
    warnings->push_back(
        "baked data was generated from a different scene (content hash "
        "mismatch); reverb parameters may not match the geometry");
  }
  return false;
}

}  // namespace aural
