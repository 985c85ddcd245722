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

#ifndef AURAL_SCENE_SCENE_H_
#define AURAL_SCENE_SCENE_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aural/base/constants.h"
#include "aural/base/vec3.h"
#include "aural/scene/material.h"

namespace aural {

// Indexed triangle soup. Material indices refer to the scene's material
// table and are fully resolved at load time.
struct TriangleMesh {
  struct Triangle {
    int v0 = 0;
    int v1 = 0;
    int v2 = 0;
    int material = 0;
    bool operator==(const Triangle&) const = default;
  };

  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;

  bool operator==(const TriangleMesh&) const = default;
};

// A placed mesh instance. Static objects never change transform after
// load; dynamic ones are moved through the engine's step boundary only.
struct SceneObject {
  int id = 0;
  int mesh_index = 0;
  Vec3 translation;
  double yaw = 0.0;  // radians about +z
  bool dynamic = false;
  bool occluder = true;

  bool operator==(const SceneObject&) const = default;
};

struct SourceSpec {
  int id = 0;
  Vec3 position;
  double gain = 1.0;  // linear, >= 0
  bool near_field_enabled = true;
  std::string signal_path;  // optional mono WAV attached at t = 0

  bool operator==(const SourceSpec&) const = default;
};

struct ListenerSpec {
  Vec3 position;
  double yaw = 0.0;
  double head_radius = kDefaultHeadRadius;  // must lie in (0.05, 0.15)

  bool operator==(const ListenerSpec&) const = default;
};

struct Scene {
  std::vector<TriangleMesh> meshes;
  std::vector<SceneObject> objects;
  MaterialTable material_table;
  std::vector<SourceSpec> sources;
  ListenerSpec listener;
  Aabb bounds;  // encloses every transformed vertex

  bool operator==(const Scene&) const = default;

  const SceneObject* FindObject(int id) const;
  const SourceSpec* FindSource(int id) const;
};

// World-space position of a mesh vertex under the object transform
// (rotation about +z, then translation). The spatial index and all
// geometry consumers share this exact arithmetic.
inline Vec3 TransformPoint(const SceneObject& object, const Vec3& v) {
  return RotateYaw(v, object.yaw) + object.translation;
}

Aabb ComputeSceneBounds(const Scene& scene);

// Parses the scene text format (grammar documented in the README).
// |base_dir| resolves relative OBJ paths. Non-fatal findings (unknown
// semantic labels, degenerate triangles) are appended to |warnings|.
Scene ParseScene(const std::string& text, const std::string& source_name,
                 const std::string& base_dir,
                 std::vector<std::string>* warnings = nullptr);

Scene LoadScene(const std::string& path,
                std::vector<std::string>* warnings = nullptr);

// Canonical text serialization; parsing it yields a Scene that compares
// equal field-by-field. Also the input of SceneContentHash.
std::string SerializeScene(const Scene& scene);

uint64_t SceneContentHash(const Scene& scene);

// FNV-1a, used for scene hashing and output checksums.
uint64_t Fnv1a64(const void* data, size_t size, uint64_t seed = 0xcbf29ce484222325ull);

struct SurfaceStats {
  double total_area = 0.0;                              // m^2, all objects
  std::array<double, kNumBands> band_avg_absorption{};  // area-weighted
  double volume = 0.0;                                  // m^3, static meshes
  bool volume_valid = false;  // false when static geometry is not closed
};

SurfaceStats ComputeSurfaceStatistics(const Scene& scene);

double TriangleArea(const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace aural

#endif  // AURAL_SCENE_SCENE_H_
