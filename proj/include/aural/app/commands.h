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

#ifndef AURAL_APP_COMMANDS_H_
#define AURAL_APP_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

namespace aural {

// Command implementations shared by the CLI and the test suites. All of
// them throw std::runtime_error with a one-line message on failure; the
// CLI maps that to a nonzero exit.

struct BakeOptions {
  std::string scene_path;
  std::string out_path;
  std::optional<int> probes;
  std::optional<double> spacing;  // meters; default 2.0 when neither set
  int rays = 10000;
  int bounces = 200;
  uint64_t seed = 0;
  int threads = 0;  // 0 = AURAL_THREADS env or hardware
  bool quiet = false;
};

void CmdBake(const BakeOptions& options);

struct RenderOptions {
  std::string scene_path;
  std::string trajectory_path;
  std::string out_path;
  std::string baked_path;  // empty = direct-only mode
  int sample_rate = 44100;
  int block_size = 1024;
  bool quiet = false;
};

void CmdRender(const RenderOptions& options);

struct BenchOptions {
  std::string scene_path;
  std::string baked_path;  // empty = direct-only mode
  int sources = 4;
  double seconds = 10.0;
  uint64_t seed = 1;
  int sample_rate = 44100;
  int block_size = 1024;
};

struct BenchReport {
  double audio_seconds = 0.0;
  double wall_seconds = 0.0;
  double rtf = 0.0;  // audio / wall; 0 when not applicable
  uint64_t checksum = 0;
  double stage_raycast = 0.0;
  double stage_direct = 0.0;
  double stage_reflections = 0.0;
  double stage_reverb = 0.0;
  double stage_binaural = 0.0;
};

BenchReport CmdBench(const BenchOptions& options);

void CmdProbes(const std::string& baked_path);

// Scene lint; returns the number of warnings printed.
int CmdValidate(const std::string& scene_path);

}  // namespace aural

#endif  // AURAL_APP_COMMANDS_H_
