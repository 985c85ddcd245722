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

#include "aural/geom/spatial_index.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "aural/base/logging.h"

namespace aural {
namespace {

constexpr int kLeafSize = 4;
constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kDeterminantEpsilon = 1e-12;

// Moller-Trumbore without backface culling. Parallel and coplanar rays do
// not count as hits.
bool IntersectTriangle(const Vec3& origin, const Vec3& direction,
                       const Vec3& a, const Vec3& b, const Vec3& c,
                       double* t_out) {
  const Vec3 edge1 = b - a;
  const Vec3 edge2 = c - a;
  const Vec3 p = Cross(direction, edge2);
  const double det = Dot(edge1, p);
  if (std::fabs(det) < kDeterminantEpsilon) return false;
  const double inv_det = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = Dot(s, p) * inv_det;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 q = Cross(s, edge1);
  const double v = Dot(direction, q) * inv_det;
  if (v < 0.0 || u + v > 1.0) return false;
  *t_out = Dot(edge2, q) * inv_det;
  return true;
}

// Slab test against the running parameter range [t0, t1] (inclusive, so
// nodes at exactly the current best distance are still visited).
bool IntersectAabb(const Aabb& box, const Vec3& origin, const Vec3& direction,
                   double t0, double t1) {
  for (int axis = 0; axis < 3; ++axis) {
    const double o = origin[axis];
    const double d = direction[axis];
    const double lo = box.min[axis];
    const double hi = box.max[axis];
    if (d == 0.0) {
      if (o < lo || o > hi) return false;
    } else {
      const double inv = 1.0 / d;
      double u0 = (lo - o) * inv;
      double u1 = (hi - o) * inv;
      if (u0 > u1) std::swap(u0, u1);
      t0 = std::max(t0, u0);
      t1 = std::min(t1, u1);
      if (t0 > t1) return false;
    }
  }
  return true;
}

Vec3 InverseRotate(const Vec3& v, double yaw) { return RotateYaw(v, -yaw); }

}  // namespace

void SpatialIndex::Bvh::Build() {
  nodes.clear();
  if (triangles.empty()) return;
  std::vector<int> order(triangles.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Triangle> reordered;
  reordered.reserve(triangles.size());
  BuildRecursive(order, 0, static_cast<int>(order.size()), reordered);
  triangles = std::move(reordered);
}

int SpatialIndex::Bvh::BuildRecursive(std::vector<int>& order, int begin,
                                      int end,
                                      std::vector<Triangle>& reordered) {
  const int node_index = static_cast<int>(nodes.size());
  nodes.emplace_back();

  Aabb bounds;
  Aabb centroid_bounds;
  for (int i = begin; i < end; ++i) {
    const Triangle& tri = triangles[static_cast<size_t>(order[i])];
    bounds.Expand(tri.a);
    bounds.Expand(tri.b);
    bounds.Expand(tri.c);
    centroid_bounds.Expand((tri.a + tri.b + tri.c) * (1.0 / 3.0));
  }
  nodes[node_index].bounds = bounds;

  const int count = end - begin;
  if (count <= kLeafSize) {
    nodes[node_index].first = static_cast<int>(reordered.size());
    nodes[node_index].count = count;
    for (int i = begin; i < end; ++i) {
      reordered.push_back(triangles[static_cast<size_t>(order[i])]);
    }
    return node_index;
  }

  const Vec3 extent = centroid_bounds.Diagonal();
  int axis = 0;
  if (extent.y > extent.x) axis = 1;
  if (extent.z > extent[axis]) axis = 2;

  // Median split; full sort with an index tie-break keeps the tree a pure
  // function of the input triangle list.
  std::sort(order.begin() + begin, order.begin() + end,
            [this, axis](int lhs, int rhs) {
              const Triangle& tl = triangles[static_cast<size_t>(lhs)];
              const Triangle& tr = triangles[static_cast<size_t>(rhs)];
              const double cl = (tl.a[axis] + tl.b[axis] + tl.c[axis]);
              const double cr = (tr.a[axis] + tr.b[axis] + tr.c[axis]);
              if (cl != cr) return cl < cr;
              return lhs < rhs;
            });
  const int mid = begin + count / 2;
  const int left = BuildRecursive(order, begin, mid, reordered);
  const int right = BuildRecursive(order, mid, end, reordered);
  nodes[node_index].left = left;
  nodes[node_index].right = right;
  nodes[node_index].count = 0;
  return node_index;
}

SpatialIndex SpatialIndex::Build(const Scene& scene, bool static_only) {
  SpatialIndex index;
  for (const auto& object : scene.objects) {
    const auto& mesh = scene.meshes[static_cast<size_t>(object.mesh_index)];
    if (object.dynamic && static_only) continue;
    if (object.dynamic) {
      DynamicEntry entry;
      entry.object_id = object.id;
      entry.translation = object.translation;
      entry.yaw = object.yaw;
      entry.bvh.triangles.reserve(mesh.triangles.size());
      for (size_t k = 0; k < mesh.triangles.size(); ++k) {
        const auto& tri = mesh.triangles[k];
        entry.bvh.triangles.push_back(
            {mesh.vertices[static_cast<size_t>(tri.v0)],
             mesh.vertices[static_cast<size_t>(tri.v1)],
             mesh.vertices[static_cast<size_t>(tri.v2)], object.id,
             static_cast<int>(k), tri.material, object.occluder});
        entry.local_bounds.Expand(mesh.vertices[static_cast<size_t>(tri.v0)]);
        entry.local_bounds.Expand(mesh.vertices[static_cast<size_t>(tri.v1)]);
        entry.local_bounds.Expand(mesh.vertices[static_cast<size_t>(tri.v2)]);
      }
      entry.bvh.Build();
      index.triangle_count_ +=
          static_cast<int>(entry.bvh.triangles.size());
      index.dynamic_.push_back(std::move(entry));
    } else {
      for (size_t k = 0; k < mesh.triangles.size(); ++k) {
        const auto& tri = mesh.triangles[k];
        const Vec3 a = TransformPoint(
            object, mesh.vertices[static_cast<size_t>(tri.v0)]);
        const Vec3 b = TransformPoint(
            object, mesh.vertices[static_cast<size_t>(tri.v1)]);
        const Vec3 c = TransformPoint(
            object, mesh.vertices[static_cast<size_t>(tri.v2)]);
        index.static_bvh_.triangles.push_back({a, b, c, object.id,
                                               static_cast<int>(k),
                                               tri.material, object.occluder});
        index.static_bounds_.Expand(a);
        index.static_bounds_.Expand(b);
        index.static_bounds_.Expand(c);
      }
    }
  }
  index.triangle_count_ +=
      static_cast<int>(index.static_bvh_.triangles.size());
  index.static_bvh_.Build();
  return index;
}

std::optional<RayHit> SpatialIndex::RaycastBvh(const Bvh& bvh,
                                               const Ray& ray) const {
  if (bvh.nodes.empty()) return std::nullopt;
  std::optional<RayHit> best;
  int stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = bvh.nodes[static_cast<size_t>(stack[--top])];
    const double upper = best ? best->t : ray.t_max;
    if (!IntersectAabb(node.bounds, ray.origin, ray.direction, kRayEpsilon,
                       upper)) {
      continue;
    }
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const Triangle& tri = bvh.triangles[static_cast<size_t>(i)];
        double t = 0.0;
        if (!IntersectTriangle(ray.origin, ray.direction, tri.a, tri.b,
                               tri.c, &t)) {
          continue;
        }
        if (t <= kRayEpsilon || t > ray.t_max) continue;
        RayHit hit;
        hit.t = t;
        hit.object_id = tri.object_id;
        hit.triangle = tri.triangle_index;
        hit.material = tri.material;
        hit.occluder = tri.occluder;
        Vec3 normal = Normalized(Cross(tri.b - tri.a, tri.c - tri.a));
        if (Dot(normal, ray.direction) > 0.0) normal = -normal;
        hit.normal = normal;
        if (!best || HitBeats(hit, *best)) best = hit;
      }
    } else {
      AURAL_DCHECK(top + 2 <= 64);
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return best;
}

std::optional<RayHit> SpatialIndex::RaycastFirst(const Ray& ray) const {
  std::optional<RayHit> best = RaycastBvh(static_bvh_, ray);
  for (const auto& entry : dynamic_) {
    Ray local_ray;
    local_ray.origin =
        InverseRotate(ray.origin - entry.translation, entry.yaw);
    local_ray.direction = InverseRotate(ray.direction, entry.yaw);
    local_ray.t_max = ray.t_max;
    auto hit = RaycastBvh(entry.bvh, local_ray);
    if (hit) {
      hit->normal = RotateYaw(hit->normal, entry.yaw);
      if (!best || HitBeats(*hit, *best)) best = hit;
    }
  }
  return best;
}

void SpatialIndex::ForEachHit(
    const Ray& ray,
    const std::function<void(const RayHit&)>& callback) const {
  const auto traverse = [&callback, &ray](const Bvh& bvh, const Ray& r,
                                          double yaw_to_world) {
    if (bvh.nodes.empty()) return;
    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& node = bvh.nodes[static_cast<size_t>(stack[--top])];
      if (!IntersectAabb(node.bounds, r.origin, r.direction, kRayEpsilon,
                         r.t_max)) {
        continue;
      }
      if (node.count > 0) {
        for (int i = node.first; i < node.first + node.count; ++i) {
          const Triangle& tri = bvh.triangles[static_cast<size_t>(i)];
          double t = 0.0;
          if (!IntersectTriangle(r.origin, r.direction, tri.a, tri.b, tri.c,
                                 &t)) {
            continue;
          }
          if (t <= kRayEpsilon || t > r.t_max) continue;
          RayHit hit;
          hit.t = t;
          hit.object_id = tri.object_id;
          hit.triangle = tri.triangle_index;
          hit.material = tri.material;
          hit.occluder = tri.occluder;
          Vec3 normal = Normalized(Cross(tri.b - tri.a, tri.c - tri.a));
          if (Dot(normal, r.direction) > 0.0) normal = -normal;
          hit.normal = RotateYaw(normal, yaw_to_world);
          callback(hit);
        }
      } else {
        stack[top++] = node.left;
        stack[top++] = node.right;
      }
    }
    (void)ray;
  };

  traverse(static_bvh_, ray, 0.0);
  for (const auto& entry : dynamic_) {
    Ray local_ray;
    local_ray.origin =
        InverseRotate(ray.origin - entry.translation, entry.yaw);
    local_ray.direction = InverseRotate(ray.direction, entry.yaw);
    local_ray.t_max = ray.t_max;
    traverse(entry.bvh, local_ray, entry.yaw);
  }
}

int SpatialIndex::CountOccluders(const Vec3& a, const Vec3& b) const {
  const Vec3 delta = b - a;
  const double length = Norm(delta);
  if (length <= 0.0) return 0;

  Ray ray;
  ray.origin = a;
  ray.direction = delta * (1.0 / length);
  // Open segment: stop short of the endpoint by the same epsilon that
  // guards the start.
  ray.t_max = length - kRayEpsilon;
  if (ray.t_max <= kRayEpsilon) return 0;

  std::vector<int> ids;
  ForEachHit(ray, [&ids](const RayHit& hit) {
    if (hit.occluder) ids.push_back(hit.object_id);
  });
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return static_cast<int>(ids.size());
}

bool SpatialIndex::FreeSpace(const Vec3& p, double clearance) const {
  AURAL_CHECK(clearance > 0.0);
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dz = -1; dz <= 1; ++dz) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        const Vec3 direction = Normalized(
            {static_cast<double>(dx), static_cast<double>(dy),
             static_cast<double>(dz)});
        if (RaycastFirst({p, direction, clearance})) return false;
      }
    }
  }
  // Reject points that are not above a floor (e.g. outside the building).
  return RaycastFirst({p, {0.0, 0.0, -1.0}, 3.0}).has_value();
}

void SpatialIndex::RefitDynamic(int object_id, const Vec3& translation,
                                double yaw) {
  for (auto& entry : dynamic_) {
    if (entry.object_id == object_id) {
      entry.translation = translation;
      entry.yaw = yaw;
      return;
    }
  }
  for (const auto& tri : static_bvh_.triangles) {
    if (tri.object_id == object_id) {
      throw std::invalid_argument("object " + std::to_string(object_id) +
                                  " is not dynamic");
    }
  }
  throw std::invalid_argument("unknown object id " +
                              std::to_string(object_id));
}

Aabb SpatialIndex::bounds() const {
  Aabb result = static_bounds_;
  for (const auto& entry : dynamic_) {
    if (!entry.local_bounds.IsValid()) continue;
    for (int corner = 0; corner < 8; ++corner) {
      const Vec3 local{
          (corner & 1) ? entry.local_bounds.max.x : entry.local_bounds.min.x,
          (corner & 2) ? entry.local_bounds.max.y : entry.local_bounds.min.y,
          (corner & 4) ? entry.local_bounds.max.z : entry.local_bounds.min.z};
      result.Expand(RotateYaw(local, entry.yaw) + entry.translation);
    }
  }
  return result;
}

}  // namespace aural
