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

#include "aural/app/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

#include "aural/bake/bake.h"
#include "aural/base/rng.h"
#include "aural/engine/engine.h"
#include "aural/io/trajectory.h"
#include "aural/io/wav.h"
#include "aural/scene/scene.h"

namespace aural {
namespace {

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const auto& warning : warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }
}

// Pulls samples from a preloaded mono WAV; zero-padded past its end.
class WavStream : public SignalStream {
 public:
  explicit WavStream(std::vector<float> samples)
      : samples_(std::move(samples)) {}

  void Fill(float* dst, int n) override {
    for (int i = 0; i < n; ++i) {
      dst[i] = position_ < samples_.size() ? samples_[position_++] : 0.0f;
    }
  }

 private:
  std::vector<float> samples_;
  size_t position_ = 0;
};

// Seeded pink noise for the benchmark's synthetic sources.
class PinkNoiseStream : public SignalStream {
 public:
  explicit PinkNoiseStream(uint64_t seed) : rng_(seed, 7001) {}

  void Fill(float* dst, int n) override {
    for (int i = 0; i < n; ++i) {
      const double white = rng_.NextDouble() * 2.0 - 1.0;
      b0_ = 0.99765 * b0_ + white * 0.0990460;
      b1_ = 0.96300 * b1_ + white * 0.2965164;
      b2_ = 0.57000 * b2_ + white * 1.0526913;
      dst[i] = static_cast<float>((b0_ + b1_ + b2_ + white * 0.1848) * 0.2);
    }
  }

 private:
  RandomStream rng_;
  double b0_ = 0.0, b1_ = 0.0, b2_ = 0.0;
};

std::vector<float> LoadMonoAsset(const std::string& path, int session_rate) {
  const WavData wav = ReadWav(path);
  if (wav.spec.sample_rate != session_rate) {
    throw std::runtime_error(
        "'" + path + "' is " + std::to_string(wav.spec.sample_rate) +
        " Hz but the session runs at " + std::to_string(session_rate) +
        " Hz (no resampling; convert the asset)");
  }
  if (wav.spec.channels != 1) {
    throw std::runtime_error("'" + path +
                             "' must be mono to drive a point source");
  }
  return wav.samples;
}

}  // namespace

void CmdBake(const BakeOptions& options) {
  std::vector<std::string> warnings;
  const Scene scene = LoadScene(options.scene_path, &warnings);
  PrintWarnings(warnings);

  BakeConfig config;
  if (options.probes && options.spacing) {
    throw std::runtime_error("--probes and --spacing are mutually exclusive");
  }
  if (options.probes) {
    config.probe_count = *options.probes;
  } else if (options.spacing) {
    config.probe_spacing = *options.spacing;
  } else {
    config.probe_spacing = 2.0;
  }
  config.rays_per_probe = options.rays;
  config.max_bounces = options.bounces;
  config.rng_seed = options.seed;
  config.thread_count = options.threads;
  config.Validate();

  const BakedData baked = Bake(scene, config);
  SaveBaked(baked, options.out_path);

  if (!options.quiet) {
    std::printf("baked %zu probe(s) -> %s\n", baked.probes.size(),
                options.out_path.c_str());
    std::printf("%4s %24s  %s\n", "id", "position",
                "rt60 per band [s] (125..4000 Hz)");
    for (const auto& probe : baked.probes) {
      std::printf("%4d  (%7.2f, %7.2f, %7.2f) ", probe.id,
                  probe.position.x, probe.position.y, probe.position.z);
      for (const double r : probe.rt60) std::printf(" %6.3f", r);
      std::printf("\n");
    }
  }
}

void CmdRender(const RenderOptions& options) {
  std::vector<std::string> warnings;
  const Scene scene = LoadScene(options.scene_path, &warnings);
  const Trajectory trajectory = ParseTrajectory(options.trajectory_path);

  std::optional<BakedData> baked;
  if (!options.baked_path.empty()) {
    baked = LoadBaked(options.baked_path);
    VerifyBakedAgainstScene(*baked, scene, &warnings);
  }
  PrintWarnings(warnings);

  const double duration = trajectory.Duration();
  if (!(duration > 0.0)) {
    throw std::runtime_error("trajectory has zero duration");
  }

  RenderConfig config;
  config.sample_rate = options.sample_rate;
  config.block_size = options.block_size;
  Engine engine(scene, baked, config);

  // Sources with a scene-declared signal start playing at t = 0.
  for (const auto& source : scene.sources) {
    if (!source.signal_path.empty()) {
      engine.AttachSignal(source.id,
                          std::make_shared<WavStream>(LoadMonoAsset(
                              source.signal_path, options.sample_rate)));
    }
  }

  // Track staged source state so move/start events compose.
  std::vector<Vec3> positions;
  std::vector<double> gains;
  for (const auto& source : scene.sources) {
    positions.push_back(source.position);
    gains.push_back(source.gain);
  }
  const auto source_index = [&scene](int id) {
    for (size_t i = 0; i < scene.sources.size(); ++i) {
      if (scene.sources[i].id == id) return static_cast<int>(i);
    }
    throw std::runtime_error("trajectory references unknown source id " +
                             std::to_string(id));
  };

  const double fs = options.sample_rate;
  const long total_frames = std::llround(duration * fs);
  const int blocks = static_cast<int>(
      (total_frames + options.block_size - 1) / options.block_size);

  std::vector<float> interleaved;
  interleaved.reserve(static_cast<size_t>(blocks) * options.block_size * 2);
  size_t next_event = 0;
  for (int block = 0; block < blocks; ++block) {
    const double t = static_cast<double>(block) * options.block_size / fs;
    Vec3 pos;
    double yaw = 0.0;
    trajectory.PoseAt(t, scene.listener, &pos, &yaw);
    engine.SetListenerPose(pos, yaw);
    while (next_event < trajectory.events.size() &&
           trajectory.events[next_event].t <= t + 1e-12) {
      const SourceEvent& event = trajectory.events[next_event];
      const int index = source_index(event.source_id);
      switch (event.type) {
        case SourceEvent::Type::kStart:
          engine.AttachSignal(event.source_id,
                              std::make_shared<WavStream>(LoadMonoAsset(
                                  event.wav_path, options.sample_rate)));
          gains[static_cast<size_t>(index)] = event.gain;
          break;
        case SourceEvent::Type::kStop:
          engine.DetachSignal(event.source_id);
          break;
        case SourceEvent::Type::kMove:
          positions[static_cast<size_t>(index)] = event.position;
          break;
      }
      engine.SetSourceState(event.source_id,
                            positions[static_cast<size_t>(index)],
                            gains[static_cast<size_t>(index)]);
      ++next_event;
    }
    const std::vector<float> rendered = engine.Step(1);
    interleaved.insert(interleaved.end(), rendered.begin(), rendered.end());
  }

  interleaved.resize(static_cast<size_t>(total_frames) * 2);
  WavSpec spec;
  spec.sample_rate = options.sample_rate;
  spec.channels = 2;
  spec.encoding = WavSpec::Encoding::kFloat32;
  WriteWav(options.out_path, interleaved, spec);
  if (!options.quiet) {
    std::printf("rendered %.3f s (%ld frames) -> %s\n", duration,
                total_frames, options.out_path.c_str());
  }
}

BenchReport CmdBench(const BenchOptions& options) {
  std::vector<std::string> warnings;
  Scene scene = LoadScene(options.scene_path, &warnings);

  std::optional<BakedData> baked;
  if (!options.baked_path.empty()) {
    baked = LoadBaked(options.baked_path);
    VerifyBakedAgainstScene(*baked, scene, &warnings);
  }
  PrintWarnings(warnings);

  // Replace the scene's sources with the synthetic set on seeded random
  // positions; each gets a straight-line drift that bounces off the
  // bounds.
  RandomStream rng(options.seed, 8101);
  const Aabb bounds = scene.bounds;
  const Vec3 extent = bounds.Diagonal();
  scene.sources.clear();
  std::vector<Vec3> positions;
  std::vector<Vec3> velocities;
  for (int s = 0; s < options.sources; ++s) {
    SourceSpec spec;
    spec.id = s;
    spec.position = {
        bounds.min.x + extent.x * (0.1 + 0.8 * rng.NextDouble()),
        bounds.min.y + extent.y * (0.1 + 0.8 * rng.NextDouble()),
        bounds.min.z + extent.z * (0.2 + 0.6 * rng.NextDouble())};
    spec.gain = 1.0;
    scene.sources.push_back(spec);
    positions.push_back(spec.position);
    velocities.push_back({rng.NextDouble() * 2.0 - 1.0,
                          rng.NextDouble() * 2.0 - 1.0, 0.0});
  }

  RenderConfig config;
  config.sample_rate = options.sample_rate;
  config.block_size = options.block_size;
  Engine engine(scene, baked, config);
  for (int s = 0; s < options.sources; ++s) {
    engine.AttachSignal(s, std::make_shared<PinkNoiseStream>(
                               options.seed + static_cast<uint64_t>(s)));
  }

  const double fs = options.sample_rate;
  const int blocks = static_cast<int>(
      std::ceil(options.seconds * fs / options.block_size));
  const double block_seconds = options.block_size / fs;

  uint64_t checksum = 0xcbf29ce484222325ull;
  const auto wall_start = std::chrono::steady_clock::now();
  for (int block = 0; block < blocks; ++block) {
    const double t = block * block_seconds;
    for (int s = 0; s < options.sources; ++s) {
      Vec3& p = positions[static_cast<size_t>(s)];
      Vec3& v = velocities[static_cast<size_t>(s)];
      p += v * block_seconds;
      if (p.x < bounds.min.x || p.x > bounds.max.x) v.x = -v.x;
      if (p.y < bounds.min.y || p.y > bounds.max.y) v.y = -v.y;
      engine.SetSourceState(s, p, 1.0);
    }
    // Listener sweeps a seeded circuit of the room.
    const double phase = 0.15 * t;
    engine.SetListenerPose(
        {bounds.Center().x + 0.3 * extent.x * std::cos(phase),
         bounds.Center().y + 0.3 * extent.y * std::sin(phase),
         bounds.Center().z},
        phase);
    const std::vector<float> rendered = engine.Step(1);
    checksum = Fnv1a64(rendered.data(), rendered.size() * sizeof(float),
                       checksum);
  }
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - wall_start)
                          .count();

  BenchReport report;
  report.audio_seconds = blocks * block_seconds;
  report.wall_seconds = wall;
  report.rtf = options.sources > 0 && wall > 0.0
                   ? report.audio_seconds / wall
                   : 0.0;
  report.checksum = checksum;
  const StageTimings& timings = engine.timings();
  report.stage_raycast = timings.raycast;
  report.stage_direct = timings.direct;
  report.stage_reflections = timings.reflections;
  report.stage_reverb = timings.reverb;
  report.stage_binaural = timings.binaural;

  std::printf("bench: %d source(s), %.2f s audio, %d Hz, block %d\n",
              options.sources, report.audio_seconds, options.sample_rate,
              options.block_size);
  if (options.sources > 0) {
    std::printf("wall %.3f s -> RTF %.2f\n", wall, report.rtf);
  } else {
    std::printf("wall %.3f s -> RTF n/a (no sources)\n", wall);
  }
  const double stage_total = timings.Total();
  const auto pct = [stage_total](double v) {
    return stage_total > 0.0 ? 100.0 * v / stage_total : 0.0;
  };
  std::printf(
      "stages: raycast %.3fs (%.1f%%) | direct %.3fs (%.1f%%) | "
      "reflections %.3fs (%.1f%%) | reverb %.3fs (%.1f%%) | "
      "binaural %.3fs (%.1f%%)\n",
      timings.raycast, pct(timings.raycast), timings.direct,
      pct(timings.direct), timings.reflections, pct(timings.reflections),
      timings.reverb, pct(timings.reverb), timings.binaural,
      pct(timings.binaural));
  std::printf("output checksum: %016llx\n",
              static_cast<unsigned long long>(checksum));
  return report;
}

void CmdProbes(const std::string& baked_path) {
  const BakedData baked = LoadBaked(baked_path);
  std::printf("%zu probe(s), rays %d, seed %llu\n", baked.probes.size(),
              baked.config.rays_per_probe,
              static_cast<unsigned long long>(baked.config.rng_seed));
  std::printf("%4s %24s  %-44s %s\n", "id", "position",
              "rt60 per band [s] (125..4000 Hz)", "box extents [m]");
  for (const auto& probe : baked.probes) {
    std::printf("%4d  (%7.2f, %7.2f, %7.2f) ", probe.id, probe.position.x,
                probe.position.y, probe.position.z);
    for (const double r : probe.rt60) std::printf(" %6.3f", r);
    const Vec3 extents = probe.proxy_box.Diagonal();
    std::printf("   %.2f x %.2f x %.2f\n", extents.x, extents.y, extents.z);
  }
}

int CmdValidate(const std::string& scene_path) {
  std::vector<std::string> warnings;
  const Scene scene = LoadScene(scene_path, &warnings);
  const SurfaceStats stats = ComputeSurfaceStatistics(scene);

  size_t triangles = 0;
  for (const auto& object : scene.objects) {
    triangles +=
        scene.meshes[static_cast<size_t>(object.mesh_index)].triangles.size();
  }
  std::printf("scene: %zu object(s), %zu triangle(s), %d material(s), "
              "%zu source(s)\n",
              scene.objects.size(), triangles, scene.material_table.size(),
              scene.sources.size());
  std::printf("bounds: (%.2f, %.2f, %.2f) .. (%.2f, %.2f, %.2f)\n",
              scene.bounds.min.x, scene.bounds.min.y, scene.bounds.min.z,
              scene.bounds.max.x, scene.bounds.max.y, scene.bounds.max.z);
  std::printf("surface area: %.2f m^2\n", stats.total_area);
  if (stats.volume_valid) {
    std::printf("volume: %.2f m^3 (static geometry closed)\n", stats.volume);
  } else {
    std::printf("volume: unavailable (static geometry is not closed)\n");
  }
  PrintWarnings(warnings);
  if (warnings.empty()) {
    std::printf("validate: clean\n");
  } else {
    std::printf("validate: %zu warning(s)\n", warnings.size());
  }
  return static_cast<int>(warnings.size());
}

}  // namespace aural
