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

#ifndef AURAL_GEOM_SPATIAL_INDEX_H_
#define AURAL_GEOM_SPATIAL_INDEX_H_

#include <functional>
#include <optional>
#include <vector>

#include "aural/base/constants.h"
#include "aural/base/vec3.h"
#include "aural/scene/scene.h"

namespace aural {

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length
  double t_max = 0.0;
};

struct RayHit {
  double t = 0.0;
  int object_id = -1;
  int triangle = -1;  // index within the object's mesh
  int material = -1;
  bool occluder = false;  // the hit object's occluder flag
  Vec3 normal;  // geometric unit normal, flipped to face the ray origin
};

// Lower (object_id, triangle) wins when two intersections share the same
// distance; keeps traversal order irrelevant.
inline bool HitBeats(const RayHit& a, const RayHit& b) {
  if (a.t != b.t) return a.t < b.t;
  if (a.object_id != b.object_id) return a.object_id < b.object_id;
  return a.triangle < b.triangle;
}

// Two-level acceleration structure: one BVH over the world-space
// triangles of all static objects, plus a local-space BVH per dynamic
// object whose transform can be refit without rebuilding. Queries are
// read-only and safe to run concurrently; RefitDynamic requires exclusive
// access.
class SpatialIndex {
 public:
  // |static_only| drops dynamic objects entirely (used for reverb baking,
  // which runs on the static structures of the scene).
  static SpatialIndex Build(const Scene& scene, bool static_only = false);

  // Nearest intersection with t in (kRayEpsilon, t_max].
  std::optional<RayHit> RaycastFirst(const Ray& ray) const;

  // Number of distinct occluder-flagged objects whose triangles cross the
  // open segment (a, b). Multiple triangles of one object count once.
  int CountOccluders(const Vec3& a, const Vec3& b) const;

  // True iff 26 lattice-direction probes from |p| are clear of geometry
  // within |clearance| and a downward ray finds a floor within 3 m.
  bool FreeSpace(const Vec3& p, double clearance) const;

  // Replaces a dynamic object's transform. Throws std::invalid_argument
  // for unknown ids or static objects.
  void RefitDynamic(int object_id, const Vec3& translation, double yaw);

  // Bounds over static geometry plus dynamic objects at their current
  // transforms.
  Aabb bounds() const;

  int triangle_count() const { return triangle_count_; }

  // Invokes |callback| for every intersection with t in
  // (kRayEpsilon, t_max]; order is unspecified.
  void ForEachHit(const Ray& ray,
                  const std::function<void(const RayHit&)>& callback) const;

 private:
  struct Triangle {
    Vec3 a, b, c;
    int object_id;
    int triangle_index;
    int material;
    bool occluder;
  };

  struct Node {
    Aabb bounds;
    int left = -1;   // internal: child node; leaf: first triangle
    int right = -1;  // internal: child node; leaf: -1
    int first = 0;
    int count = 0;  // > 0 marks a leaf
  };

  struct Bvh {
    std::vector<Triangle> triangles;
    std::vector<Node> nodes;

    void Build();
    int BuildRecursive(std::vector<int>& order, int begin, int end,
                       std::vector<Triangle>& reordered);
  };

  struct DynamicEntry {
    int object_id;
    Bvh bvh;        // local space
    Vec3 translation;
    double yaw;
    Aabb local_bounds;
  };

  std::optional<RayHit> RaycastBvh(const Bvh& bvh, const Ray& ray) const;

  Bvh static_bvh_;
  std::vector<DynamicEntry> dynamic_;
  Aabb static_bounds_;
  int triangle_count_ = 0;
};

}  // namespace aural

#endif  // AURAL_GEOM_SPATIAL_INDEX_H_
