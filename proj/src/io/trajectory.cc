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

#include "aural/io/trajectory.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "aural/base/constants.h"

namespace aural {
namespace {

[[noreturn]] void Fail(const std::string& source, int line,
                       const std::string& message) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " +
                           message);
}

double ParseDouble(const std::string& source, int line,
                   const std::string& token, const char* what) {
  try {
    size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    if (consumed != token.size() || !std::isfinite(value)) {
      Fail(source, line, std::string("invalid ") + what + " '" + token + "'");
    }
    return value;
  } catch (const std::logic_error&) {
    Fail(source, line, std::string("invalid ") + what + " '" + token + "'");
  }
}

int ParseInt(const std::string& source, int line, const std::string& token,
             const char* what) {
  const double value = ParseDouble(source, line, token, what);
  const int integer = static_cast<int>(value);
  if (static_cast<double>(integer) != value) {
    Fail(source, line, std::string(what) + " must be an integer, got '" +
                           token + "'");
  }
  return integer;
}

}  // namespace

double Trajectory::Duration() const {
  double duration = 0.0;
  if (!keyframes.empty()) {
    duration = std::max(duration, keyframes.back().t);
  }
  for (const auto& event : events) {
    duration = std::max(duration, event.t);
  }
  return duration;
}

void Trajectory::PoseAt(double t, const ListenerSpec& fallback,
                        Vec3* position, double* yaw) const {
  if (keyframes.empty()) {
    *position = fallback.position;
    *yaw = fallback.yaw;
    return;
  }
  if (t <= keyframes.front().t) {
    *position = keyframes.front().position;
    *yaw = keyframes.front().yaw;
    return;
  }
  if (t >= keyframes.back().t) {
    *position = keyframes.back().position;
    *yaw = keyframes.back().yaw;
    return;
  }
  size_t hi = 1;
  while (keyframes[hi].t < t) ++hi;
  const ListenerKeyframe& a = keyframes[hi - 1];
  const ListenerKeyframe& b = keyframes[hi];
  const double u = (t - a.t) / (b.t - a.t);
  *position = a.position + (b.position - a.position) * u;
  // Shortest-arc yaw interpolation.
  *yaw = a.yaw + std::remainder(b.yaw - a.yaw, kTwoPi) * u;
}

Trajectory ParseTrajectoryText(const std::string& text,
                               const std::string& source_name) {
  Trajectory trajectory;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  double last_key_t = -1.0;
  std::map<int, double> last_event_t;
  std::map<int, bool> playing;

  while (std::getline(stream, line)) {
    ++line_number;
    std::vector<std::string> tokens;
    {
      std::istringstream tokenizer(line);
      std::string token;
      while (tokenizer >> token) {
        if (token[0] == '#') break;
        tokens.push_back(token);
      }
    }
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (keyword == "key") {
      if (tokens.size() != 6) {
        Fail(source_name, line_number, "key needs <t> <x> <y> <z> <yaw>");
      }
      ListenerKeyframe key;
      key.t = ParseDouble(source_name, line_number, tokens[1], "time");
      key.position = {
          ParseDouble(source_name, line_number, tokens[2], "coordinate"),
          ParseDouble(source_name, line_number, tokens[3], "coordinate"),
          ParseDouble(source_name, line_number, tokens[4], "coordinate")};
      key.yaw = ParseDouble(source_name, line_number, tokens[5], "yaw");
      if (key.t < 0.0) {
        Fail(source_name, line_number, "times must be >= 0");
      }
      if (key.t <= last_key_t) {
        Fail(source_name, line_number,
             "keyframe times must be strictly increasing");
      }
      last_key_t = key.t;
      trajectory.keyframes.push_back(key);
      continue;
    }

    SourceEvent event;
    if (keyword == "start") {
      if (tokens.size() != 5) {
        Fail(source_name, line_number,
             "start needs <t> <source_id> <wav_path> <gain>");
      }
      event.type = SourceEvent::Type::kStart;
      event.t = ParseDouble(source_name, line_number, tokens[1], "time");
      event.source_id =
          ParseInt(source_name, line_number, tokens[2], "source id");
      event.wav_path = tokens[3];
      event.gain = ParseDouble(source_name, line_number, tokens[4], "gain");
      if (event.gain < 0.0) {
        Fail(source_name, line_number, "gain must be >= 0");
      }
    } else if (keyword == "stop") {
      if (tokens.size() != 3) {
        Fail(source_name, line_number, "stop needs <t> <source_id>");
      }
      event.type = SourceEvent::Type::kStop;
      event.t = ParseDouble(source_name, line_number, tokens[1], "time");
      event.source_id =
          ParseInt(source_name, line_number, tokens[2], "source id");
    } else if (keyword == "move") {
      if (tokens.size() != 6) {
        Fail(source_name, line_number,
             "move needs <t> <source_id> <x> <y> <z>");
      }
      event.type = SourceEvent::Type::kMove;
      event.t = ParseDouble(source_name, line_number, tokens[1], "time");
      event.source_id =
          ParseInt(source_name, line_number, tokens[2], "source id");
      event.position = {
          ParseDouble(source_name, line_number, tokens[3], "coordinate"),
          ParseDouble(source_name, line_number, tokens[4], "coordinate"),
          ParseDouble(source_name, line_number, tokens[5], "coordinate")};
    } else {
      Fail(source_name, line_number, "unknown directive '" + keyword + "'");
    }

    if (event.t < 0.0) {
      Fail(source_name, line_number, "times must be >= 0");
    }
    const auto last = last_event_t.find(event.source_id);
    if (last != last_event_t.end() && event.t <= last->second) {
      Fail(source_name, line_number,
           "event times for source " + std::to_string(event.source_id) +
               " must be strictly increasing");
    }
    last_event_t[event.source_id] = event.t;

    if (event.type == SourceEvent::Type::kStart) {
      if (playing[event.source_id]) {
        Fail(source_name, line_number,
             "source " + std::to_string(event.source_id) +
                 " started twice without a stop");
      }
      playing[event.source_id] = true;
    } else if (event.type == SourceEvent::Type::kStop) {
      if (!playing[event.source_id]) {
        Fail(source_name, line_number,
             "stop without a start for source " +
                 std::to_string(event.source_id));
      }
      playing[event.source_id] = false;
    }
    trajectory.events.push_back(event);
  }
  return trajectory;
}

Trajectory ParseTrajectory(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open trajectory file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return ParseTrajectoryText(buffer.str(), path);
}

}  // namespace aural
