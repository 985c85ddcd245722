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

#include <array>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "aural/base/rng.h"
#include "doctest.h"
#include "test_util.h"

namespace aural {
namespace {

TEST_SUITE_BEGIN("spatial");

// ---------------------------------------------------------------------
// Brute-force oracles. These re-implement segment and ray queries
// directly over the scene's triangle lists, without any acceleration
// structure.

struct OracleObject {
  int id = 0;
  bool occluder = true;
  bool dynamic = false;
  Vec3 translation;
  double yaw = 0.0;
  std::vector<std::array<Vec3, 3>> triangles;  // world for static,
                                               // local for dynamic
};

bool OracleIntersect(const Vec3& o, const Vec3& d, const Vec3& a,
                     const Vec3& b, const Vec3& c, double* t_out) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = Cross(d, e2);
  const double det = Dot(e1, p);
  if (std::fabs(det) < 1e-12) return false;
  const double inv = 1.0 / det;
  const Vec3 s = o - a;
  const double u = Dot(s, p) * inv;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 q = Cross(s, e1);
  const double v = Dot(d, q) * inv;
  if (v < 0.0 || u + v > 1.0) return false;
  *t_out = Dot(e2, q) * inv;
  return true;
}

struct OracleHit {
  double t;
  int object_id;
  int triangle;
};

std::optional<OracleHit> OracleRaycast(const std::vector<OracleObject>& objs,
                                       const Ray& ray) {
  std::optional<OracleHit> best;
  for (const auto& obj : objs) {
    Vec3 o = ray.origin;
    Vec3 d = ray.direction;
    if (obj.dynamic) {
      o = RotateYaw(ray.origin - obj.translation, -obj.yaw);
      d = RotateYaw(ray.direction, -obj.yaw);
    }
    for (size_t k = 0; k < obj.triangles.size(); ++k) {
      const auto& tri = obj.triangles[k];
      double t = 0.0;
      if (!OracleIntersect(o, d, tri[0], tri[1], tri[2], &t)) continue;
      if (t <= 1e-4 || t > ray.t_max) continue;
      const OracleHit hit{t, obj.id, static_cast<int>(k)};
      const bool beats =
          !best || t < best->t ||
          (t == best->t && (hit.object_id < best->object_id ||
                            (hit.object_id == best->object_id &&
                             hit.triangle < best->triangle)));
      if (beats) best = hit;
    }
  }
  return best;
}

int OracleCountOccluders(const std::vector<OracleObject>& objs,
                         const Vec3& a, const Vec3& b) {
  const Vec3 delta = b - a;
  const double len = Norm(delta);
  if (len <= 0.0) return 0;
  const Vec3 dir = delta * (1.0 / len);
  std::set<int> ids;
  for (const auto& obj : objs) {
    if (!obj.occluder) continue;
    Vec3 o = a;
    Vec3 d = dir;
    if (obj.dynamic) {
      o = RotateYaw(a - obj.translation, -obj.yaw);
      d = RotateYaw(dir, -obj.yaw);
    }
    for (const auto& tri : obj.triangles) {
      double t = 0.0;
      if (!OracleIntersect(o, d, tri[0], tri[1], tri[2], &t)) continue;
      if (t > 1e-4 && t < len - 1e-4) {
        ids.insert(obj.id);
        break;
      }
    }
  }
  return static_cast<int>(ids.size());
}

// ---------------------------------------------------------------------

Scene ShoeboxScene(const Vec3& size) {
  return ParseScene(test::ShoeboxSceneText(size, 0.2), "box", ".");
}

TEST_CASE("shoebox index covers all 12 triangles") {
  const Scene scene = ShoeboxScene({5, 4, 3});
  const SpatialIndex index = SpatialIndex::Build(scene);
  CHECK(index.triangle_count() == 12);
}

TEST_CASE("ray from shoebox center hits the +x wall at 2.5 m") {
  const Scene scene = ShoeboxScene({5, 4, 3});
  const SpatialIndex index = SpatialIndex::Build(scene);
  const auto hit =
      index.RaycastFirst({{2.5, 2.0, 1.5}, {1.0, 0.0, 0.0}, 100.0});
  REQUIRE(hit.has_value());
  CHECK(hit->t == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(Dot(hit->normal, Vec3{1, 0, 0}) < 0.0);  // faces the origin
}

TEST_CASE("short ray pointing away from geometry misses") {
  const Scene scene = ShoeboxScene({5, 4, 3});
  const SpatialIndex index = SpatialIndex::Build(scene);
  CHECK_FALSE(
      index.RaycastFirst({{2.5, 2.0, 1.5}, {1.0, 0.0, 0.0}, 0.1}).has_value());
}

TEST_CASE("coplanar rays do not count as hits") {
  const std::string text =
      "scene 1\n"
      "mesh tri inline\n"
      "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
      "t 0 1 2 label wall\n"
      "endmesh\n"
      "object 0 tri 0 0 0 0 0 1\n";
  const Scene scene = ParseScene(text, "tri", ".");
  const SpatialIndex index = SpatialIndex::Build(scene);
  CHECK_FALSE(index.RaycastFirst({{-1.0, 0.2, 0.0}, {1.0, 0.0, 0.0}, 10.0})
                  .has_value());
}

TEST_CASE("single-triangle raycast through centroid hits") {
  const std::string text =
      "scene 1\n"
      "mesh tri inline\n"
      "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
      "t 0 1 2 label wall\n"
      "endmesh\n"
      "object 0 tri 0 0 0 0 0 1\n";
  const Scene scene = ParseScene(text, "tri", ".");
  const SpatialIndex index = SpatialIndex::Build(scene);
  const auto hit = index.RaycastFirst(
      {{1.0 / 3, 1.0 / 3, 5.0}, {0.0, 0.0, -1.0}, 100.0});
  REQUIRE(hit.has_value());
  CHECK(hit->t == doctest::Approx(5.0));
  CHECK(hit->triangle == 0);
}

// Builds a scene of |count| random triangles split over one static and
// one dynamic object, plus matching oracle data.
void RandomTriangleScene(int count, uint64_t seed, Scene* scene,
                         std::vector<OracleObject>* oracle) {
  RandomStream rng(seed, 1);
  TriangleMesh static_mesh;
  TriangleMesh dynamic_mesh;
  const auto random_point = [&rng]() {
    return Vec3{rng.NextDouble() * 20.0 - 10.0, rng.NextDouble() * 20.0 - 10.0,
                rng.NextDouble() * 20.0 - 10.0};
  };
  for (int i = 0; i < count; ++i) {
    TriangleMesh& mesh = (i % 4 == 0) ? dynamic_mesh : static_mesh;
    const Vec3 base = random_point();
    const int v = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(base);
    mesh.vertices.push_back(base + Vec3{rng.NextDouble(), rng.NextDouble(),
                                        rng.NextDouble()});
    mesh.vertices.push_back(base + Vec3{rng.NextDouble(), rng.NextDouble(),
                                        rng.NextDouble()});
    mesh.triangles.push_back({v, v + 1, v + 2, 0});
  }
  scene->material_table = BuiltinMaterialTable();
  scene->meshes = {static_mesh, dynamic_mesh};
  scene->objects = {{0, 0, {0, 0, 0}, 0.0, false, true},
                    {1, 1, {1.5, -0.5, 0.25}, 0.6, true, true}};
  scene->bounds = ComputeSceneBounds(*scene);

  OracleObject static_obj;
  static_obj.id = 0;
  for (const auto& tri : static_mesh.triangles) {
    static_obj.triangles.push_back(
        {static_mesh.vertices[static_cast<size_t>(tri.v0)],
         static_mesh.vertices[static_cast<size_t>(tri.v1)],
         static_mesh.vertices[static_cast<size_t>(tri.v2)]});
  }
  OracleObject dynamic_obj;
  dynamic_obj.id = 1;
  dynamic_obj.dynamic = true;
  dynamic_obj.translation = {1.5, -0.5, 0.25};
  dynamic_obj.yaw = 0.6;
  for (const auto& tri : dynamic_mesh.triangles) {
    dynamic_obj.triangles.push_back(
        {dynamic_mesh.vertices[static_cast<size_t>(tri.v0)],
         dynamic_mesh.vertices[static_cast<size_t>(tri.v1)],
         dynamic_mesh.vertices[static_cast<size_t>(tri.v2)]});
  }
  *oracle = {static_obj, dynamic_obj};
}

void CheckRaysMatchOracle(const SpatialIndex& index,
                          const std::vector<OracleObject>& oracle, int n_rays,
                          uint64_t seed) {
  RandomStream rng(seed, 2);
  for (int i = 0; i < n_rays; ++i) {
    Ray ray;
    ray.origin = {rng.NextDouble() * 24.0 - 12.0,
                  rng.NextDouble() * 24.0 - 12.0,
                  rng.NextDouble() * 24.0 - 12.0};
    ray.direction = rng.UniformSphereDirection();
    ray.t_max = 100.0;
    const auto fast = index.RaycastFirst(ray);
    const auto slow = OracleRaycast(oracle, ray);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      CHECK(std::fabs(fast->t - slow->t) < 1e-6);
      CHECK(fast->object_id == slow->object_id);
      CHECK(fast->triangle == slow->triangle);
    }
  }
}

TEST_CASE("random raycasts match brute force") {
  Scene scene;
  std::vector<OracleObject> oracle;
  RandomTriangleScene(4000, 12345, &scene, &oracle);
  const SpatialIndex index = SpatialIndex::Build(scene);
  CheckRaysMatchOracle(index, oracle, 1000, 777);
}

TEST_CASE("refit keeps matching brute force, including huge translations") {
  Scene scene;
  std::vector<OracleObject> oracle;
  RandomTriangleScene(2000, 999, &scene, &oracle);
  SpatialIndex index = SpatialIndex::Build(scene);

  SUBCASE("identity refit changes nothing") {
    index.RefitDynamic(1, {1.5, -0.5, 0.25}, 0.6);
    CheckRaysMatchOracle(index, oracle, 300, 31);
  }
  SUBCASE("moved object still matches the oracle") {
    index.RefitDynamic(1, {4.0, 3.0, -2.0}, -1.1);
    oracle[1].translation = {4.0, 3.0, -2.0};
    oracle[1].yaw = -1.1;
    CheckRaysMatchOracle(index, oracle, 300, 32);
    CHECK(index.bounds().max.x > 3.0);
  }
  SUBCASE("translate by 1e6 grows bounds and still matches") {
    index.RefitDynamic(1, {1e6, 0.0, 0.0}, 0.0);
    oracle[1].translation = {1e6, 0.0, 0.0};
    oracle[1].yaw = 0.0;
    CheckRaysMatchOracle(index, oracle, 300, 33);
    CHECK(index.bounds().max.x > 1e5);
  }
  SUBCASE("refit then inverse restores all query answers") {
    RandomStream rng(5, 3);
    std::vector<Ray> rays;
    for (int i = 0; i < 100; ++i) {
      rays.push_back({{rng.NextDouble() * 10 - 5, rng.NextDouble() * 10 - 5,
                       rng.NextDouble() * 10 - 5},
                      rng.UniformSphereDirection(), 100.0});
    }
    std::vector<std::optional<RayHit>> before;
    for (const auto& ray : rays) before.push_back(index.RaycastFirst(ray));
    index.RefitDynamic(1, {9.0, 9.0, 9.0}, 2.0);
    index.RefitDynamic(1, {1.5, -0.5, 0.25}, 0.6);
    for (size_t i = 0; i < rays.size(); ++i) {
      const auto after = index.RaycastFirst(rays[i]);
      REQUIRE(after.has_value() == before[i].has_value());
      if (after) {
        CHECK(after->t == before[i]->t);
        CHECK(after->object_id == before[i]->object_id);
        CHECK(after->triangle == before[i]->triangle);
      }
    }
  }
  SUBCASE("refit of static or unknown objects throws") {
    CHECK_THROWS_AS(index.RefitDynamic(0, {0, 0, 0}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(index.RefitDynamic(42, {0, 0, 0}, 0.0),
                    std::invalid_argument);
  }
}

// Scene with the shoebox room (occluder) plus two thin interior panels
// that can block the source-listener segment. Panels are dynamic
// occluders; the segment runs along y at x=2.5.
Scene PanelScene(int n_panels) {
  std::ostringstream out;
  out << "scene 1\n";
  out << test::BoxMeshText("room", {0, 0, 0}, {5, 4, 3}, "default");
  out << test::BoxMeshText("panel", {-0.5, -0.02, -1.0}, {0.5, 0.02, 1.0},
                           "default");
  out << "object 0 room 0 0 0 0 0 0\n";  // room walls not occluders here
  for (int i = 0; i < n_panels; ++i) {
    out << "object " << (i + 1) << " panel 2.5 " << (1.5 + i) << " 1.5 0 1 1\n";
  }
  out << "source 0 2.5 0.5 1.5 1 1\n";
  out << "listener 2.5 3.5 1.5 0\n";
  return ParseScene(out.str(), "panels", ".");
}

TEST_CASE("occluder counts") {
  const Vec3 src{2.5, 0.5, 1.5};
  const Vec3 lis{2.5, 3.5, 1.5};

  SUBCASE("no panels -> 0") {
    const Scene scene = PanelScene(0);
    const SpatialIndex index = SpatialIndex::Build(scene);
    CHECK(index.CountOccluders(src, lis) == 0);
  }
  SUBCASE("one panel entered and exited counts once") {
    const Scene scene = PanelScene(1);
    const SpatialIndex index = SpatialIndex::Build(scene);
    // The segment passes through both faces of the thin panel: two
    // triangle-level hits, one object.
    CHECK(index.CountOccluders(src, lis) == 1);
  }
  SUBCASE("two separate panels -> 2") {
    const Scene scene = PanelScene(2);
    const SpatialIndex index = SpatialIndex::Build(scene);
    CHECK(index.CountOccluders(src, lis) == 2);
  }
  SUBCASE("count is symmetric") {
    const Scene scene = PanelScene(2);
    const SpatialIndex index = SpatialIndex::Build(scene);
    CHECK(index.CountOccluders(src, lis) == index.CountOccluders(lis, src));
  }
  SUBCASE("identical endpoints -> 0") {
    const Scene scene = PanelScene(2);
    const SpatialIndex index = SpatialIndex::Build(scene);
    CHECK(index.CountOccluders(src, src) == 0);
  }
  SUBCASE("door translated out of the segment drops the count by one") {
    const Scene scene = PanelScene(1);
    SpatialIndex index = SpatialIndex::Build(scene);
    std::vector<OracleObject> oracle(2);
    oracle[0].id = 1;
    oracle[0].dynamic = true;
    oracle[0].translation = {2.5, 1.5, 1.5};
    const auto& mesh = scene.meshes[1];
    for (const auto& tri : mesh.triangles) {
      oracle[0].triangles.push_back(
          {mesh.vertices[static_cast<size_t>(tri.v0)],
           mesh.vertices[static_cast<size_t>(tri.v1)],
           mesh.vertices[static_cast<size_t>(tri.v2)]});
    }
    oracle.resize(1);
    CHECK(OracleCountOccluders(oracle, src, lis) == 1);
    CHECK(index.CountOccluders(src, lis) == 1);

    index.RefitDynamic(1, {0.7, 1.5, 1.5}, 0.0);
    oracle[0].translation = {0.7, 1.5, 1.5};
    CHECK(OracleCountOccluders(oracle, src, lis) == 0);
    CHECK(index.CountOccluders(src, lis) == 0);
  }
}

TEST_CASE("occluder count is invariant to triangle subdivision") {
  // Same panel geometry, once as two triangles per face and once with
  // each face split into eight.
  const auto make_scene = [](int splits) {
    std::ostringstream out;
    out << "scene 1\n";
    out << test::BoxMeshText("room", {0, 0, 0}, {5, 4, 3}, "default");
    out << "mesh panel inline\n";
    // A single quad at y=2, x in [2,3], z in [0.5, 2.5], subdivided.
    const double x0 = 2.0, x1 = 3.0, z0 = 0.5, z1 = 2.5;
    const int n = splits;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        out << "v " << (x0 + (x1 - x0) * i / n) << " 2 "
            << (z0 + (z1 - z0) * j / n) << "\n";
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int v00 = i * (n + 1) + j;
        const int v01 = v00 + 1;
        const int v10 = v00 + (n + 1);
        const int v11 = v10 + 1;
        out << "t " << v00 << ' ' << v10 << ' ' << v11 << " label wall\n";
        out << "t " << v00 << ' ' << v11 << ' ' << v01 << " label wall\n";
      }
    }
    out << "endmesh\n";
    out << "object 0 room 0 0 0 0 0 0\n";
    out << "object 1 panel 0 0 0 0 0 1\n";
    return ParseScene(out.str(), "panel", ".");
  };
  const Vec3 src{2.5, 0.5, 1.5};
  const Vec3 lis{2.5, 3.5, 1.5};
  const SpatialIndex coarse = SpatialIndex::Build(make_scene(1));
  const SpatialIndex fine = SpatialIndex::Build(make_scene(4));
  CHECK(coarse.CountOccluders(src, lis) == 1);
  CHECK(fine.CountOccluders(src, lis) == 1);
}

TEST_CASE("free space probes") {
  const Scene scene = ShoeboxScene({5, 4, 3});
  const SpatialIndex index = SpatialIndex::Build(scene);
  SUBCASE("shoebox center is free") {
    CHECK(index.FreeSpace({2.5, 2.0, 1.5}, 0.3));
  }
  SUBCASE("point 0.05 m from a wall is not free at 0.3 m clearance") {
    CHECK_FALSE(index.FreeSpace({0.05, 2.0, 1.5}, 0.3));
  }
  SUBCASE("point far above the scene has no floor within 3 m") {
    CHECK_FALSE(index.FreeSpace({2.5, 2.0, 103.0}, 0.3));
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace aural
