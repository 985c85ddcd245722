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

#ifndef AURAL_IO_TRAJECTORY_H_
#define AURAL_IO_TRAJECTORY_H_

#include <string>
#include <vector>

#include "aural/base/vec3.h"
#include "aural/scene/scene.h"

namespace aural {

struct ListenerKeyframe {
  double t = 0.0;
  Vec3 position;
  double yaw = 0.0;
};

struct SourceEvent {
  enum class Type { kStart, kStop, kMove };
  double t = 0.0;
  int source_id = 0;
  Type type = Type::kStart;
  std::string wav_path;  // kStart
  double gain = 1.0;     // kStart
  Vec3 position;         // kMove
};

// Listener keyframes plus per-source start/stop/move events. The listener
// pose interpolates linearly between keyframes (shortest arc for yaw) and
// holds the last pose beyond coverage.
struct Trajectory {
  std::vector<ListenerKeyframe> keyframes;
  std::vector<SourceEvent> events;

  double Duration() const;

  // Pose at |t|; |fallback| supplies the pose when no keyframes exist.
  void PoseAt(double t, const ListenerSpec& fallback, Vec3* position,
              double* yaw) const;
};

// Line-oriented text: '#' comments, whitespace-separated fields.
//   key   <t> <x> <y> <z> <yaw>
//   start <t> <source_id> <wav_path> <gain>
//   stop  <t> <source_id>
//   move  <t> <source_id> <x> <y> <z>
// Times are seconds, strictly increasing per stream (keyframes; events of
// one source). start/stop must pair up per source.
Trajectory ParseTrajectoryText(const std::string& text,
                               const std::string& source_name);
Trajectory ParseTrajectory(const std::string& path);

}  // namespace aural

#endif  // AURAL_IO_TRAJECTORY_H_
