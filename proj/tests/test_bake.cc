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

#include "aural/bake/bake.h"

#include <cmath>

#include "doctest.h"
#include "test_util.h"

namespace aural {
namespace {

TEST_SUITE_BEGIN("bake");

// Eyring prediction for a shoebox with uniform absorption:
// RT60 = 0.161 V / (-S ln(1 - alpha)).
double EyringRt60(const Vec3& size, double alpha) {
  const double volume = size.x * size.y * size.z;
  const double area = 2.0 * (size.x * size.y + size.x * size.z +
                             size.y * size.z);
  return 0.161 * volume / (-area * std::log(1.0 - alpha));
}

Scene UniformShoebox(const Vec3& size, double alpha, double scatter = 0.3) {
  return ParseScene(test::ShoeboxSceneText(size, alpha, scatter), "box", ".");
}

BakeConfig SmallBakeConfig(int rays = 2000) {
  BakeConfig config;
  config.probe_count = 1;
  config.rays_per_probe = rays;
  config.rng_seed = 1;
  return config;
}

TEST_CASE("probe grid in the 5x4x3 shoebox at 2 m spacing") {
  const Scene scene = UniformShoebox({5, 4, 3}, 0.2);
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  BakeConfig config;
  config.probe_spacing = 2.0;
  const auto probes = PlaceProbes(scene, index, config);
  REQUIRE(probes.size() == 4);
  const Vec3 expected[4] = {
      {1.5, 1.0, 1.2}, {3.5, 1.0, 1.2}, {1.5, 3.0, 1.2}, {3.5, 3.0, 1.2}};
  for (int i = 0; i < 4; ++i) {
    CHECK(probes[i].x == doctest::Approx(expected[i].x).epsilon(1e-12));
    CHECK(probes[i].y == doctest::Approx(expected[i].y).epsilon(1e-12));
    CHECK(probes[i].z == doctest::Approx(expected[i].z).epsilon(1e-9));
  }
}

TEST_CASE("probe_count 1 lands nearest the bounds centroid") {
  const Scene scene = UniformShoebox({5, 4, 3}, 0.2);
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  BakeConfig config;
  config.probe_count = 1;
  const auto probes = PlaceProbes(scene, index, config);
  REQUIRE(probes.size() == 1);
  CHECK(probes[0].x == doctest::Approx(2.5));
  CHECK(probes[0].y == doctest::Approx(2.0));
  CHECK(probes[0].z == doctest::Approx(1.2));
}

TEST_CASE("open quad scene yields no probes and errors") {
  const std::string text =
      "scene 1\n"
      "mesh quad inline\n"
      "v -5 -5 0\nv 5 -5 0\nv 5 5 0\nv -5 5 0\n"
      "t 0 1 2 label floor\nt 0 2 3 label floor\n"
      "endmesh\n"
      "object 0 quad 0 0 0 0 0 1\n";
  const Scene scene = ParseScene(text, "quad", ".");
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  BakeConfig config;
  config.probe_spacing = 2.0;
  CHECK_THROWS_AS(PlaceProbes(scene, index, config), std::runtime_error);
}

TEST_CASE("total absorption leaves an empty histogram") {
  const Scene scene = UniformShoebox({5, 4, 3}, 1.0);
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  BakeConfig config = SmallBakeConfig(500);
  const auto histogram = TraceEnergyDecay(index, {2.5, 2.0, 1.5},
                                          scene.material_table, config, 0);
  for (size_t b = 0; b < kNumBands; ++b) {
    CHECK(histogram.TotalEnergy(b) == 0.0);
  }
  const auto rt60 = EstimateRt60(histogram);
  for (const double r : rt60) CHECK(r == 0.0);
}

TEST_CASE("lossless box keeps a non-decaying histogram") {
  const Scene scene = UniformShoebox({5, 4, 3}, 0.0, 0.0);
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  BakeConfig config = SmallBakeConfig(500);
  const auto histogram = TraceEnergyDecay(index, {2.5, 2.0, 1.5},
                                          scene.material_table, config, 0);
  // Compare deposited energy early vs late (bounce cutoff lands around
  // 1.5 s for this room, so compare within the filled range).
  const auto window_sum = [&histogram](double t0, double t1) {
    double sum = 0.0;
    const auto& bins = histogram.bins[0];
    for (size_t k = 0; k < bins.size(); ++k) {
      const double t = (k + 0.5) * histogram.bin_width;
      if (t >= t0 && t < t1) sum += bins[k];
    }
    return sum;
  };
  const double early = window_sum(0.2, 0.4);
  const double late = window_sum(0.8, 1.0);
  CHECK(early > 0.0);
  CHECK(late / early > 0.8);
  CHECK(late / early < 1.25);

  // Energy sanity: bounded by rays * max_bounces.
  for (size_t b = 0; b < kNumBands; ++b) {
    CHECK(histogram.TotalEnergy(b) >= 0.0);
    CHECK(histogram.TotalEnergy(b) <=
          double(config.rays_per_probe) * config.max_bounces);
  }
}

TEST_CASE("synthetic exponential decay fits RT60 = 0.300 s") {
  EnergyDecayHistogram histogram;
  histogram.bin_width = 0.005;
  // level(t) = -60 t / 0.3 dB: one dB per bin, r = 10^(-0.1) per bin.
  const double r = std::pow(10.0, -0.1);
  for (auto& band : histogram.bins) {
    band.resize(120);
    for (size_t k = 0; k < band.size(); ++k) band[k] = std::pow(r, k);
  }
  const auto rt60 = EstimateRt60(histogram);
  for (const double value : rt60) {
    CHECK(value == doctest::Approx(0.300).epsilon(0.01));
  }
}

TEST_CASE("all-zero histogram estimates zero") {
  EnergyDecayHistogram histogram;
  histogram.bin_width = 0.005;
  for (auto& band : histogram.bins) band.assign(100, 0.0);
  std::array<bool, kNumBands> warnings{};
  const auto rt60 = EstimateRt60(histogram, &warnings);
  for (const double value : rt60) CHECK(value == 0.0);
  for (const bool w : warnings) CHECK_FALSE(w);
}

TEST_CASE("shoebox decay agrees with Eyring within 15 percent") {
  const Vec3 size{5, 4, 3};
  const Scene scene = UniformShoebox(size, 0.2);
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  const BakeConfig config = SmallBakeConfig(3000);
  const auto histogram = TraceEnergyDecay(index, {2.5, 2.0, 1.5},
                                          scene.material_table, config, 0);
  const auto rt60 = EstimateRt60(histogram);
  const double expected = EyringRt60(size, 0.2);
  CHECK(expected == doctest::Approx(0.4605).epsilon(0.001));
  for (const double value : rt60) {
    CHECK(std::fabs(value - expected) / expected < 0.15);
  }
}

TEST_CASE("higher absorption strictly shortens every band's RT60") {
  const Vec3 size{5, 4, 3};
  std::array<double, kNumBands> previous;
  previous.fill(1e9);
  for (const double alpha : {0.1, 0.2, 0.4}) {
    const Scene scene = UniformShoebox(size, alpha);
    const SpatialIndex index = SpatialIndex::Build(scene, true);
    const BakeConfig config = SmallBakeConfig(1500);
    const auto histogram = TraceEnergyDecay(index, {2.5, 2.0, 1.5},
                                            scene.material_table, config, 0);
    const auto rt60 = EstimateRt60(histogram);
    for (size_t b = 0; b < kNumBands; ++b) {
      CHECK(rt60[b] < previous[b]);
    }
    previous = rt60;
  }
}

TEST_CASE("proxy box of a 4 m cube") {
  const Scene scene = UniformShoebox({4, 4, 4}, 0.2);
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  Aabb box;
  std::array<std::array<double, kNumBands>, 6> reflection;
  FitProxyBox(index, scene.material_table, {2, 2, 2}, &box, &reflection);
  CHECK(std::fabs((2.0 - box.min.x) - 2.0) < 0.05);
  CHECK(std::fabs((box.max.x - 2.0) - 2.0) < 0.05);
  CHECK(std::fabs((2.0 - box.min.y) - 2.0) < 0.05);
  CHECK(std::fabs((box.max.y - 2.0) - 2.0) < 0.05);
  CHECK(std::fabs((2.0 - box.min.z) - 2.0) < 0.05);
  CHECK(std::fabs((box.max.z - 2.0) - 2.0) < 0.05);
  CHECK(box.Contains({2, 2, 2}));
  for (const auto& face : reflection) {
    for (const double value : face) {
      CHECK(value == doctest::Approx(std::sqrt(0.8)).epsilon(1e-12));
    }
  }
}

TEST_CASE("proxy box in an open half space caps missing faces at 50 m") {
  const std::string text =
      "scene 1\n"
      "mesh quad inline\n"
      "v -60 -60 0\nv 60 -60 0\nv 60 60 0\nv -60 60 0\n"
      "t 0 1 2 label floor\nt 0 2 3 label floor\n"
      "endmesh\n"
      "object 0 quad 0 0 0 0 0 1\n";
  const Scene scene = ParseScene(text, "halfspace", ".");
  const SpatialIndex index = SpatialIndex::Build(scene, true);
  Aabb box;
  std::array<std::array<double, kNumBands>, 6> reflection;
  FitProxyBox(index, scene.material_table, {0, 0, 1.2}, &box, &reflection);
  // Floor face at (roughly) the true distance; jitter widens it by at
  // most sec(10 degrees).
  CHECK((1.2 - box.min.z) == doctest::Approx(1.2).epsilon(0.02));
  CHECK((box.max.z - 1.2) == doctest::Approx(50.0));
  CHECK((box.max.x - 0.0) == doctest::Approx(50.0));
  CHECK((0.0 - box.min.x) == doctest::Approx(50.0));
  // An open face reflects nothing.
  for (const double value : reflection[1]) CHECK(value == 0.0);
  for (const double value : reflection[4]) CHECK(value > 0.0);
}

TEST_CASE("bake is deterministic, including across thread counts") {
  test::TempDir dir;
  const Scene scene = UniformShoebox({5, 4, 3}, 0.2);
  BakeConfig config = SmallBakeConfig(500);
  config.probe_count = 2;

  config.thread_count = 1;
  const BakedData serial = Bake(scene, config);
  config.thread_count = 4;
  const BakedData parallel = Bake(scene, config);
  CHECK(serial == parallel);

  const auto path_a = dir.path() / "a.baked";
  const auto path_b = dir.path() / "b.baked";
  SaveBaked(serial, path_a.string());
  SaveBaked(parallel, path_b.string());
  CHECK(test::ReadFileBytes(path_a.string()) ==
        test::ReadFileBytes(path_b.string()));
}

TEST_CASE("different seeds stay within 10 percent relative RT60") {
  const Scene scene = UniformShoebox({5, 4, 3}, 0.2);
  BakeConfig config = SmallBakeConfig(4000);
  config.rng_seed = 11;
  const BakedData a = Bake(scene, config);
  config.rng_seed = 97;
  const BakedData b = Bake(scene, config);
  for (size_t band = 0; band < kNumBands; ++band) {
    const double ra = a.probes[0].rt60[band];
    const double rb = b.probes[0].rt60[band];
    CHECK(std::fabs(ra - rb) / ra < 0.10);
  }
}

TEST_CASE("dynamic door state does not affect baked probes") {
  const auto make_scene = [](double door_x) {
    std::ostringstream out;
    out << "scene 1\n";
    out << test::BoxMeshText("room", {0, 0, 0}, {5, 4, 3}, "default");
    out << test::BoxMeshText("door", {-0.5, -0.05, -1.0}, {0.5, 0.05, 1.0},
                             "default");
    out << "object 0 room 0 0 0 0 0 1\n";
    out << "object 1 door " << door_x << " 2 1.2 0 1 1\n";
    out << "source 0 1 1 1 1 1\nlistener 4 2 1 0\n";
    return ParseScene(out.str(), "door", ".");
  };
  BakeConfig config = SmallBakeConfig(500);
  const BakedData closed = Bake(make_scene(2.5), config);
  const BakedData open = Bake(make_scene(0.6), config);
  CHECK(closed.probes == open.probes);
}

TEST_CASE("baked files round-trip losslessly") {
  test::TempDir dir;
  const Scene scene = UniformShoebox({5, 4, 3}, 0.2);
  const BakedData baked = Bake(scene, SmallBakeConfig(500));
  const auto path = dir.path() / "probe.baked";
  SaveBaked(baked, path.string());
  const BakedData loaded = LoadBaked(path.string());
  CHECK(loaded == baked);

  SUBCASE("hash mismatch warns but returns data") {
    const Scene other = UniformShoebox({6, 4, 3}, 0.2);
    std::vector<std::string> warnings;
    CHECK(VerifyBakedAgainstScene(loaded, scene, &warnings));
    CHECK(warnings.empty());
    CHECK_FALSE(VerifyBakedAgainstScene(loaded, other, &warnings));
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("hash") != std::string::npos);
  }

  SUBCASE("truncated files error naming expected and actual length") {
    const std::string bytes = test::ReadFileBytes(path.string());
    const auto truncated = dir.path() / "short.baked";
    std::ofstream out(truncated, std::ios::binary);
    out.write(bytes.data(),
              static_cast<std::streamsize>(bytes.size() / 2));
    out.close();
    CHECK_THROWS_WITH_AS(LoadBaked(truncated.string()),
                         doctest::Contains("truncated"), std::runtime_error);
  }

  SUBCASE("bad magic is rejected") {
    const auto bogus = dir.path() / "bogus.baked";
    std::ofstream out(bogus, std::ios::binary);
    out << "not a baked file at all";
    out.close();
    CHECK_THROWS_AS(LoadBaked(bogus.string()), std::runtime_error);
  }
}

TEST_SUITE_END();

}  // namespace
}  // namespace aural
