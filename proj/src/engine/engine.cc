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

#include "aural/engine/engine.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "aural/base/logging.h"

namespace aural {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

inline void Approach(double& value, double target, double rate) {
  value += (target - value) * rate;
}

// Reflections can be delayed at most this long relative to the direct
// arrival; the cap bounds per-source memory (proxy boxes cap miss
// distances at 50 m anyway).
constexpr double kMaxReflectionDelaySeconds = 0.6;

}  // namespace

void RenderConfig::Validate() const {
  if (sample_rate < 16000) {
    throw std::runtime_error("sample_rate must be >= 16000 Hz");
  }
  const bool power_of_two =
      block_size > 0 && (block_size & (block_size - 1)) == 0;
  if (!power_of_two || block_size < 64 || block_size > 8192) {
    throw std::runtime_error(
        "block_size must be a power of two in [64, 8192]");
  }
  if (!(ref_distance > 0.0)) {
    throw std::runtime_error("ref_distance must be > 0");
  }
  if (!(min_distance > 0.0 && min_distance <= ref_distance)) {
    throw std::runtime_error("min_distance must lie in (0, ref_distance]");
  }
  if (!(occlusion_open_cutoff > 0.0 &&
        occlusion_open_cutoff < sample_rate / 2.0)) {
    throw std::runtime_error("occlusion_open_cutoff must be below Nyquist");
  }
  if (max_occluders < 0) {
    throw std::runtime_error("max_occluders must be >= 0");
  }
  if (!(nearfield_shelf_hz > 0.0 && nearfield_shelf_hz < sample_rate / 2.0)) {
    throw std::runtime_error("nearfield_shelf_hz must be below Nyquist");
  }
  if (reflection_order < 0 || reflection_order > 1) {
    throw std::runtime_error("reflection_order must be 0 or 1");
  }
  if (reverb_send_gain < 0.0) {
    throw std::runtime_error("reverb_send_gain must be >= 0");
  }
  if (!(smoothing_tau > 0.0)) {
    throw std::runtime_error("smoothing_tau must be > 0");
  }
}

DirectParams ComputeDirectParams(const Vec3& source_pos,
                                 const Vec3& listener_pos,
                                 const RenderConfig& config,
                                 bool near_field_enabled) {
  AURAL_CHECK(IsFinite(source_pos) && IsFinite(listener_pos));
  DirectParams params;
  params.distance = Norm(source_pos - listener_pos);
  const double clamped = std::max(params.distance, config.min_distance);
  params.gain = config.ref_distance / clamped;
  if (near_field_enabled && params.distance < config.ref_distance) {
    params.nearfield_boost_db =
        std::min(20.0 * std::log10(config.ref_distance / clamped),
                 config.nearfield_max_boost_db);
  }
  return params;
}

OcclusionParams ComputeOcclusionParams(int occluder_count,
                                       const RenderConfig& config) {
  OcclusionParams params;
  if (occluder_count <= 0) {
    params.gain = 1.0;
    params.cutoff_hz = config.occlusion_open_cutoff;
    params.bypass = true;
    return params;
  }
  const int k = std::min(occluder_count, config.max_occluders);
  params.gain =
      std::pow(10.0, k * config.occlusion_gain_db_per_occluder / 20.0);
  params.cutoff_hz = config.occlusion_open_cutoff * std::pow(2.0, -k);
  params.bypass = false;
  return params;
}

int SelectProbe(std::span<const ReverbProbe> probes,
                const Vec3& listener_pos) {
  AURAL_CHECK(!probes.empty());
  int best = 0;
  double best_distance = SquaredNorm(probes[0].position - listener_pos);
  for (size_t i = 1; i < probes.size(); ++i) {
    const double d = SquaredNorm(probes[i].position - listener_pos);
    if (d < best_distance) {
      best_distance = d;
      best = static_cast<int>(i);
    }
  }
  return probes[static_cast<size_t>(best)].id;
}

ListenerFrameDirection DirectionInListenerFrame(const Vec3& world_vector,
                                                double listener_yaw) {
  const double c = std::cos(listener_yaw);
  const double s = std::sin(listener_yaw);
  const Vec3 forward{c, s, 0.0};
  const Vec3 right{s, -c, 0.0};
  ListenerFrameDirection direction;
  direction.azimuth =
      std::atan2(Dot(world_vector, right), Dot(world_vector, forward));
  const double horizontal =
      std::hypot(world_vector.x, world_vector.y);
  direction.elevation = std::atan2(world_vector.z, horizontal);
  return direction;
}

std::array<ImageSourceTap, 6> ComputeImageSources(
    const ReverbProbe& probe, const Vec3& source_pos,
    const Vec3& listener_pos, double listener_yaw,
    const RenderConfig& config) {
  std::array<ImageSourceTap, 6> taps{};
  const double direct_distance = Norm(source_pos - listener_pos);
  // Face order matches the proxy-box fit: -x, +x, -y, +y, -z, +z.
  const double planes[6] = {probe.proxy_box.min.x, probe.proxy_box.max.x,
                            probe.proxy_box.min.y, probe.proxy_box.max.y,
                            probe.proxy_box.min.z, probe.proxy_box.max.z};
  for (int face = 0; face < 6; ++face) {
    const int axis = face / 2;
    Vec3 image = source_pos;
    const double mirrored = 2.0 * planes[face] - image[axis];
    if (axis == 0) image.x = mirrored;
    if (axis == 1) image.y = mirrored;
    if (axis == 2) image.z = mirrored;

    const Vec3 to_image = image - listener_pos;
    const double path = Norm(to_image);
    ImageSourceTap& tap = taps[static_cast<size_t>(face)];
    // Images closer than the direct path happen when source or listener
    // sit outside the box; those reflections are non-physical.
    if (path + 1e-9 < direct_distance || path < 1e-9) {
      tap.valid = false;
      continue;
    }
    tap.valid = true;
    tap.delay_seconds = path / config.speed_of_sound;
    const double distance_gain =
        config.ref_distance / std::max(path, config.min_distance);
    for (size_t band = 0; band < kNumBands; ++band) {
      tap.band_gain[band] =
          distance_gain *
          probe.face_reflection[static_cast<size_t>(face)][band];
    }
    tap.direction = DirectionInListenerFrame(to_image, listener_yaw);
  }
  return taps;
}

Engine::Engine(Scene scene, std::optional<BakedData> baked,
               RenderConfig config)
    : scene_(std::move(scene)),
      baked_(std::move(baked)),
      config_(config),
      index_(SpatialIndex::Build(scene_)) {
  config_.Validate();
  if (baked_ && baked_->probes.empty()) {
    throw std::runtime_error("baked data contains no probes");
  }
  const double fs = config_.sample_rate;
  smoothing_ = std::exp(-1.0 / (config_.smoothing_tau * fs));

  listener_pos_ = scene_.listener.position;
  listener_yaw_ = scene_.listener.yaw;
  staged_listener_pos_ = listener_pos_;
  staged_listener_yaw_ = listener_yaw_;

  const double diagonal = scene_.bounds.IsValid()
                              ? Norm(scene_.bounds.Diagonal())
                              : 10.0;
  const int prop_capacity =
      static_cast<int>((diagonal * 1.5 / config_.speed_of_sound + 0.05) *
                       fs) +
      config_.block_size + 8;
  const int band_capacity =
      static_cast<int>(kMaxReflectionDelaySeconds * fs) + 8;

  chains_.reserve(scene_.sources.size());
  for (const auto& spec : scene_.sources) {
    SourceChain chain;
    chain.id = spec.id;
    chain.position = spec.position;
    chain.source_gain = spec.gain;
    chain.near_field = spec.near_field_enabled;
    chain.prop_line = std::make_unique<DelayLine>(prop_capacity);
    chain.nearfield_lp = std::make_unique<OnePoleLowpass>(fs);
    chain.nearfield_lp->SetCutoff(config_.nearfield_shelf_hz);
    chain.occlusion_lp = std::make_unique<OnePoleLowpass>(fs);
    chain.occlusion_lp->SetCutoff(config_.occlusion_open_cutoff);
    chain.direct_spatializer = std::make_unique<Spatializer>(
        fs, scene_.listener.head_radius, config_.smoothing_tau);
    if (baked_) {
      chain.reflection_bank = std::make_unique<OctaveFilterbank>(fs);
      for (int r = 0; r < 6; ++r) {
        chain.reflection_spatializers.push_back(
            std::make_unique<Spatializer>(fs, scene_.listener.head_radius,
                                          config_.smoothing_tau));
      }
      for (size_t b = 0; b < kNumBands; ++b) {
        chain.band_lines.push_back(
            std::make_unique<DelayLine>(band_capacity));
      }
    }
    chains_.push_back(std::move(chain));
  }

  if (baked_) {
    fdn_ = std::make_unique<FdnBank>(fs);
    fdn_->SetSmoothingCoeff(smoothing_);
    fdn_filterbank_ = std::make_unique<OctaveFilterbank>(fs);
  }

  const size_t n = static_cast<size_t>(config_.block_size);
  y0_buf_.resize(n);
  direct_buf_.resize(n);
  for (auto& buf : refl_buf_) buf.resize(n);
  send_buf_.resize(n);
  for (auto& buf : fdn_band_buf_) buf.resize(n);
  zero_buf_.assign(n, 0.0f);
}

void Engine::SetListenerPose(const Vec3& position, double yaw) {
  AURAL_CHECK(IsFinite(position) && std::isfinite(yaw));
  staged_listener_pos_ = position;
  staged_listener_yaw_ = yaw;
}

void Engine::SetSourceState(int source_id, const Vec3& position,
                            double gain) {
  AURAL_CHECK(IsFinite(position));
  for (auto& chain : chains_) {
    if (chain.id == source_id) {
      chain.position = position;
      chain.source_gain = std::max(gain, 0.0);
      return;
    }
  }
  throw std::invalid_argument("unknown source id " +
                              std::to_string(source_id));
}

void Engine::SetObjectTransform(int object_id, const Vec3& translation,
                                double yaw) {
  const SceneObject* object = scene_.FindObject(object_id);
  if (object == nullptr) {
    throw std::invalid_argument("unknown object id " +
                                std::to_string(object_id));
  }
  if (!object->dynamic) {
    throw std::invalid_argument("object " + std::to_string(object_id) +
                                " is not dynamic");
  }
  staged_transforms_.push_back({object_id, translation, yaw});
}

void Engine::AttachSignal(int source_id,
                          std::shared_ptr<SignalStream> stream) {
  for (auto& chain : chains_) {
    if (chain.id == source_id) {
      chain.stream = std::move(stream);
      return;
    }
  }
  throw std::invalid_argument("unknown source id " +
                              std::to_string(source_id));
}

void Engine::DetachSignal(int source_id) { AttachSignal(source_id, nullptr); }

int Engine::occluder_count(int source_index) const {
  AURAL_CHECK(source_index >= 0 &&
              source_index < static_cast<int>(chains_.size()));
  return chains_[static_cast<size_t>(source_index)].occluder_count;
}

void Engine::UpdateSourceTargets(SourceChain& chain) {
  const double fs = config_.sample_rate;
  const DirectParams direct = ComputeDirectParams(
      chain.position, listener_pos_, config_, chain.near_field);
  const double clamped = std::max(direct.distance, config_.min_distance);

  chain.src_gain_target = chain.source_gain;
  chain.dist_gain_target = direct.gain;
  if (config_.propagation_delay_enabled) {
    chain.prop_delay_target =
        std::min(direct.distance / config_.speed_of_sound * fs,
                 static_cast<double>(chain.prop_line->capacity() - 2));
  } else {
    chain.prop_delay_target = 0.0;
  }
  chain.nf_gain_target = std::pow(10.0, direct.nearfield_boost_db / 20.0);

  chain.occluder_count =
      std::min(index_.CountOccluders(chain.position, listener_pos_),
               config_.max_occluders);
  const OcclusionParams occlusion =
      ComputeOcclusionParams(chain.occluder_count, config_);
  chain.occl_gain_target = occlusion.gain;
  chain.occl_cutoff_target = occlusion.cutoff_hz;
  chain.occl_mix_target = occlusion.bypass ? 0.0 : 1.0;

  chain.send_gain_target =
      config_.reverb_send_gain *
      std::min(1.0, config_.ref_distance / clamped);

  const Vec3 to_source = chain.position - listener_pos_;
  if (SquaredNorm(to_source) > 1e-18) {
    const auto direction = DirectionInListenerFrame(to_source, listener_yaw_);
    chain.direct_spatializer->SetTargetDirection(direction.azimuth,
                                                 direction.elevation);
  }

  if (baked_ && current_probe_ >= 0 && config_.reflection_order >= 1) {
    const ReverbProbe& probe =
        baked_->probes[static_cast<size_t>(current_probe_)];
    const auto taps = ComputeImageSources(probe, chain.position,
                                          listener_pos_, listener_yaw_,
                                          config_);
    for (size_t r = 0; r < 6; ++r) {
      if (taps[r].valid) {
        const double relative_delay =
            std::max(0.0, taps[r].delay_seconds -
                              direct.distance / config_.speed_of_sound);
        chain.refl_delay_target[r] = std::min(
            relative_delay * fs,
            static_cast<double>(chain.band_lines[0]->capacity() - 2));
        chain.refl_gain_target[r] = taps[r].band_gain;
        chain.reflection_spatializers[r]->SetTargetDirection(
            taps[r].direction.azimuth, taps[r].direction.elevation);
      } else {
        chain.refl_gain_target[r].fill(0.0);
      }
    }
  } else {
    for (size_t r = 0; r < 6; ++r) chain.refl_gain_target[r].fill(0.0);
  }
}

void Engine::ApplyStagedUpdates() {
  for (const auto& staged : staged_transforms_) {
    index_.RefitDynamic(staged.object_id, staged.translation, staged.yaw);
    for (auto& object : scene_.objects) {
      if (object.id == staged.object_id) {
        object.translation = staged.translation;
        object.yaw = staged.yaw;
      }
    }
  }
  staged_transforms_.clear();

  listener_pos_ = staged_listener_pos_;
  listener_yaw_ = staged_listener_yaw_;

  if (baked_) {
    const int probe = SelectProbe(baked_->probes, listener_pos_);
    if (probe != current_probe_) {
      current_probe_ = probe;
      fdn_->SetRt60(
          baked_->probes[static_cast<size_t>(current_probe_)].rt60);
    }
  }

  for (auto& chain : chains_) UpdateSourceTargets(chain);
}

void Engine::SnapAllToTargets() {
  for (auto& chain : chains_) {
    chain.src_gain = chain.src_gain_target;
    chain.dist_gain = chain.dist_gain_target;
    chain.prop_delay = chain.prop_delay_target;
    chain.nf_gain = chain.nf_gain_target;
    chain.occl_gain = chain.occl_gain_target;
    chain.occl_mix = chain.occl_mix_target;
    chain.occl_cutoff = chain.occl_cutoff_target;
    chain.send_gain = chain.send_gain_target;
    chain.refl_gain = chain.refl_gain_target;
    chain.refl_delay = chain.refl_delay_target;
    chain.direct_spatializer->SnapToTarget();
    for (auto& spatializer : chain.reflection_spatializers) {
      spatializer->SnapToTarget();
    }
  }
  if (fdn_) fdn_->SnapGains();
}

void Engine::RenderBlock(std::span<const float* const> inputs, float* left,
                         float* right) {
  if (inputs.size() != chains_.size()) {
    throw std::invalid_argument(
        "render: got " + std::to_string(inputs.size()) +
        " input blocks for " + std::to_string(chains_.size()) + " sources");
  }
  for (size_t s = 0; s < inputs.size(); ++s) {
    if (inputs[s] == nullptr) {
      throw std::invalid_argument("render: missing input block for source " +
                                  std::to_string(chains_[s].id));
    }
  }

  const auto t_stage0 = Clock::now();
  ApplyStagedUpdates();
  if (first_block_) {
    SnapAllToTargets();
    first_block_ = false;
  }
  timings_.raycast += Seconds(t_stage0, Clock::now());

  const int n = config_.block_size;
  std::fill(left, left + n, 0.0f);
  std::fill(right, right + n, 0.0f);
  std::fill(send_buf_.begin(), send_buf_.end(), 0.0f);

  const double rate = 1.0 - smoothing_;
  const bool reflections_active =
      baked_.has_value() && config_.reflection_order >= 1;

  for (auto& chain : chains_) {
    const float* input =
        inputs[static_cast<size_t>(&chain - chains_.data())];

    // Direct path: propagation delay, distance gain, near-field shelf,
    // occlusion filter, reverb send.
    const auto t_direct = Clock::now();
    const bool prop = config_.propagation_delay_enabled;
    for (int i = 0; i < n; ++i) {
      Approach(chain.src_gain, chain.src_gain_target, rate);
      const double in = input[i] * chain.src_gain;

      double delayed = in;
      if (prop) {
        chain.prop_line->Write(static_cast<float>(in));
        Approach(chain.prop_delay, chain.prop_delay_target, rate);
        delayed = chain.prop_line->ReadFractional(chain.prop_delay);
      }
      y0_buf_[static_cast<size_t>(i)] = static_cast<float>(delayed);

      Approach(chain.dist_gain, chain.dist_gain_target, rate);
      const double attenuated = delayed * chain.dist_gain;

      Approach(chain.nf_gain, chain.nf_gain_target, rate);
      const double lows =
          chain.nearfield_lp->Process(static_cast<float>(attenuated));
      const double shelved = attenuated + (chain.nf_gain - 1.0) * lows;

      Approach(chain.occl_gain, chain.occl_gain_target, rate);
      Approach(chain.occl_mix, chain.occl_mix_target, rate);
      Approach(chain.occl_cutoff, chain.occl_cutoff_target, rate);
      chain.occlusion_lp->SetCutoff(chain.occl_cutoff);
      const double muffled =
          chain.occlusion_lp->Process(static_cast<float>(shelved));
      direct_buf_[static_cast<size_t>(i)] = static_cast<float>(
          chain.occl_gain *
          ((1.0 - chain.occl_mix) * shelved + chain.occl_mix * muffled));

      Approach(chain.send_gain, chain.send_gain_target, rate);
      send_buf_[static_cast<size_t>(i)] +=
          static_cast<float>(in * chain.send_gain);
    }
    timings_.direct += Seconds(t_direct, Clock::now());

    // First-order image sources from the probe's proxy box.
    if (reflections_active) {
      const auto t_refl = Clock::now();
      std::array<float, kNumBands> bands{};
      for (int i = 0; i < n; ++i) {
        chain.reflection_bank->ProcessSample(
            y0_buf_[static_cast<size_t>(i)], &bands);
        for (size_t b = 0; b < kNumBands; ++b) {
          chain.band_lines[b]->Write(bands[b]);
        }
        for (size_t r = 0; r < 6; ++r) {
          Approach(chain.refl_delay[r], chain.refl_delay_target[r], rate);
          double tap = 0.0;
          for (size_t b = 0; b < kNumBands; ++b) {
            Approach(chain.refl_gain[r][b], chain.refl_gain_target[r][b],
                     rate);
            tap += chain.refl_gain[r][b] *
                   chain.band_lines[b]->ReadFractional(chain.refl_delay[r]);
          }
          refl_buf_[r][static_cast<size_t>(i)] = static_cast<float>(tap);
        }
      }
      timings_.reflections += Seconds(t_refl, Clock::now());
    }

    const auto t_binaural = Clock::now();
    chain.direct_spatializer->Process(direct_buf_.data(), n, left, right);
    if (reflections_active) {
      for (size_t r = 0; r < 6; ++r) {
        chain.reflection_spatializers[r]->Process(refl_buf_[r].data(), n,
                                                  left, right);
      }
    }
    timings_.binaural += Seconds(t_binaural, Clock::now());
  }

  if (baked_) {
    const auto t_reverb = Clock::now();
    std::array<float, kNumBands> bands{};
    for (int i = 0; i < n; ++i) {
      fdn_filterbank_->ProcessSample(send_buf_[static_cast<size_t>(i)],
                                     &bands);
      for (size_t b = 0; b < kNumBands; ++b) {
        fdn_band_buf_[b][static_cast<size_t>(i)] = bands[b];
      }
    }
    std::array<const float*, kNumBands> band_ptrs{};
    for (size_t b = 0; b < kNumBands; ++b) {
      band_ptrs[b] = fdn_band_buf_[b].data();
    }
    fdn_->Process(band_ptrs, n, left, right);
    timings_.reverb += Seconds(t_reverb, Clock::now());
  }
}

AudioBlock Engine::RenderBlock(std::span<const float* const> inputs) {
  AudioBlock block(2, config_.block_size, config_.sample_rate);
  RenderBlock(inputs, block.channel(0).data(), block.channel(1).data());
  return block;
}

std::vector<float> Engine::Step(int n_blocks) {
  AURAL_CHECK(n_blocks >= 0);
  const int n = config_.block_size;
  std::vector<float> interleaved(
      static_cast<size_t>(2 * n * n_blocks), 0.0f);
  std::vector<std::vector<float>> source_inputs(chains_.size());
  std::vector<const float*> pointers(chains_.size());
  std::vector<float> left(static_cast<size_t>(n));
  std::vector<float> right(static_cast<size_t>(n));

  for (int block = 0; block < n_blocks; ++block) {
    for (size_t s = 0; s < chains_.size(); ++s) {
      if (chains_[s].stream != nullptr) {
        source_inputs[s].assign(static_cast<size_t>(n), 0.0f);
        chains_[s].stream->Fill(source_inputs[s].data(), n);
        pointers[s] = source_inputs[s].data();
      } else {
        pointers[s] = zero_buf_.data();
      }
    }
    RenderBlock(pointers, left.data(), right.data());
    for (int i = 0; i < n; ++i) {
      interleaved[static_cast<size_t>(2 * (block * n + i))] = left[i];
      interleaved[static_cast<size_t>(2 * (block * n + i) + 1)] = right[i];
    }
  }
  return interleaved;
}

}  // namespace aural
