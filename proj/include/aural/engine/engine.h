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

#ifndef AURAL_ENGINE_ENGINE_H_
#define AURAL_ENGINE_ENGINE_H_

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "aural/bake/bake.h"
#include "aural/base/constants.h"
#include "aural/base/vec3.h"
#include "aural/binaural/spatializer.h"
#include "aural/dsp/audio_block.h"
#include "aural/dsp/delay_line.h"
#include "aural/dsp/fdn.h"
#include "aural/dsp/filters.h"
#include "aural/geom/spatial_index.h"
#include "aural/scene/scene.h"

namespace aural {

struct RenderConfig {
  int sample_rate = 44100;
  int block_size = 1024;  // power of two in [64, 8192]
  double speed_of_sound = kSpeedOfSound;
  double ref_distance = 1.0;   // meters
  double min_distance = 0.25;  // distance clamp, in (0, ref_distance]
  double occlusion_open_cutoff = 8000.0;          // Hz
  double occlusion_gain_db_per_occluder = -3.0;   // dB
  int max_occluders = 4;
  double nearfield_shelf_hz = 300.0;
  double nearfield_max_boost_db = 9.0;
  int reflection_order = 1;
  double reverb_send_gain = 0.25;  // linear
  double smoothing_tau = 0.010;    // seconds
  bool propagation_delay_enabled = true;

  void Validate() const;  // throws std::runtime_error
};

struct DirectParams {
  double distance = 0.0;            // meters, unclamped
  double gain = 1.0;                // ref_distance / max(d, min_distance)
  double nearfield_boost_db = 0.0;  // low-shelf boost below the shelf freq
};

DirectParams ComputeDirectParams(const Vec3& source_pos,
                                 const Vec3& listener_pos,
                                 const RenderConfig& config,
                                 bool near_field_enabled);

struct OcclusionParams {
  double gain = 1.0;
  double cutoff_hz = 0.0;
  bool bypass = true;
};

// k occluders: broadband gain 10^(k * db_per_occluder / 20) and low-pass
// cutoff open_cutoff * 2^-k; k = 0 bypasses the filter. k clamps to
// max_occluders.
OcclusionParams ComputeOcclusionParams(int occluder_count,
                                       const RenderConfig& config);

// Nearest probe by Euclidean distance; ties break to the lowest id.
int SelectProbe(std::span<const ReverbProbe> probes,
                const Vec3& listener_pos);

struct ListenerFrameDirection {
  double azimuth = 0.0;    // radians, positive to the listener's right
  double elevation = 0.0;  // radians (carried, unused by the v1 model)
};

ListenerFrameDirection DirectionInListenerFrame(const Vec3& world_vector,
                                                double listener_yaw);

// One first-order reflection from mirroring the source across a proxy-box
// face. Non-physical images (path shorter than the direct path) are
// dropped.
struct ImageSourceTap {
  bool valid = false;
  double delay_seconds = 0.0;  // absolute path delay L / c
  std::array<double, kNumBands> band_gain{};
  ListenerFrameDirection direction;
};

std::array<ImageSourceTap, 6> ComputeImageSources(
    const ReverbProbe& probe, const Vec3& source_pos,
    const Vec3& listener_pos, double listener_yaw,
    const RenderConfig& config);

// Per-block wall time spent in each stage, in seconds.
struct StageTimings {
  double raycast = 0.0;
  double direct = 0.0;
  double reflections = 0.0;
  double reverb = 0.0;
  double binaural = 0.0;

  double Total() const {
    return raycast + direct + reflections + reverb + binaural;
  }
};

// Pull source for per-source audio; implementations fill exactly n
// samples (zero-padding at end of material).
class SignalStream {
 public:
  virtual ~SignalStream() = default;
  virtual void Fill(float* dst, int n) = 0;
};

// The run-time renderer. Per block: staged pose updates are consumed,
// occluders recounted and the nearest probe re-selected, then every
// source runs distance attenuation + near-field shelf + occlusion filter
// + binaural direct path, six first-order image-source taps from the
// probe's proxy box, and a distance-weighted send into the shared
// per-band FDN. All time-varying parameters glide with per-sample
// exponential smoothing, so pose changes never click.
//
// The engine is single-stream: one caller advances RenderBlock/Step at a
// time and the pose setters must be serialized with stepping. Output is a
// pure function of inputs and state.
class Engine {
 public:
  Engine(Scene scene, std::optional<BakedData> baked, RenderConfig config);

  // Staging calls; they take effect at the next block boundary.
  void SetListenerPose(const Vec3& position, double yaw);
  void SetSourceState(int source_id, const Vec3& position, double gain);
  void SetObjectTransform(int object_id, const Vec3& translation, double yaw);

  void AttachSignal(int source_id, std::shared_ptr<SignalStream> stream);
  void DetachSignal(int source_id);

  // Renders one block from explicit per-source inputs (scene source
  // order; all pointers non-null with block_size samples each).
  // Accumulates nothing across calls: left/right are overwritten.
  void RenderBlock(std::span<const float* const> inputs, float* left,
                   float* right);

  AudioBlock RenderBlock(std::span<const float* const> inputs);

  // Pulls attached signals (silence when detached) and renders
  // |n_blocks|, returning interleaved stereo.
  std::vector<float> Step(int n_blocks = 1);

  int current_probe() const { return current_probe_; }
  int occluder_count(int source_index) const;
  const RenderConfig& config() const { return config_; }
  const Scene& scene() const { return scene_; }
  int source_count() const { return static_cast<int>(chains_.size()); }

  const StageTimings& timings() const { return timings_; }
  void ResetTimings() { timings_ = StageTimings(); }

 private:
  struct SourceChain {
    int id = 0;
    Vec3 position;
    double source_gain = 1.0;
    bool near_field = true;

    // Smoothed parameters and their targets.
    double src_gain = 0.0, src_gain_target = 0.0;
    double dist_gain = 0.0, dist_gain_target = 0.0;
    double prop_delay = 0.0, prop_delay_target = 0.0;  // samples
    double nf_gain = 1.0, nf_gain_target = 1.0;        // linear shelf gain
    double occl_gain = 1.0, occl_gain_target = 1.0;
    double occl_mix = 0.0, occl_mix_target = 0.0;
    double occl_cutoff = 8000.0, occl_cutoff_target = 8000.0;
    double send_gain = 0.0, send_gain_target = 0.0;
    std::array<std::array<double, kNumBands>, 6> refl_gain{};
    std::array<std::array<double, kNumBands>, 6> refl_gain_target{};
    std::array<double, 6> refl_delay{};         // samples, relative
    std::array<double, 6> refl_delay_target{};

    int occluder_count = 0;

    std::unique_ptr<DelayLine> prop_line;
    std::unique_ptr<OnePoleLowpass> nearfield_lp;
    std::unique_ptr<OnePoleLowpass> occlusion_lp;
    std::unique_ptr<Spatializer> direct_spatializer;
    std::vector<std::unique_ptr<Spatializer>> reflection_spatializers;
    std::unique_ptr<OctaveFilterbank> reflection_bank;
    std::vector<std::unique_ptr<DelayLine>> band_lines;

    std::shared_ptr<SignalStream> stream;
  };

  void ApplyStagedUpdates();
  void UpdateSourceTargets(SourceChain& chain);
  void SnapAllToTargets();

  Scene scene_;
  std::optional<BakedData> baked_;
  RenderConfig config_;
  SpatialIndex index_;
  double smoothing_ = 0.0;  // per-sample coefficient

  std::vector<SourceChain> chains_;
  Vec3 listener_pos_;
  double listener_yaw_ = 0.0;

  // Staged updates.
  Vec3 staged_listener_pos_;
  double staged_listener_yaw_ = 0.0;
  struct StagedTransform {
    int object_id;
    Vec3 translation;
    double yaw;
  };
  std::vector<StagedTransform> staged_transforms_;

  int current_probe_ = -1;
  std::unique_ptr<FdnBank> fdn_;
  std::unique_ptr<OctaveFilterbank> fdn_filterbank_;

  bool first_block_ = true;
  StageTimings timings_;

  // Scratch buffers (block_size samples).
  std::vector<float> y0_buf_;
  std::vector<float> direct_buf_;
  std::array<std::vector<float>, 6> refl_buf_;
  std::vector<float> send_buf_;
  std::array<std::vector<float>, kNumBands> fdn_band_buf_;
  std::vector<float> zero_buf_;
};

}  // namespace aural

#endif  // AURAL_ENGINE_ENGINE_H_
