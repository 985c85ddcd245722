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

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "aural/app/commands.h"
#include "aural/io/trajectory.h"
#include "aural/io/wav.h"
#include "doctest.h"
#include "test_util.h"

namespace aural {
namespace {

TEST_SUITE_BEGIN("app");

TEST_CASE("float32 WAV round-trips bit-identically") {
  test::TempDir dir;
  std::vector<float> samples = {0.0f, 0.5f, -0.25f, 1.0f, -1.0f, 0.1234567f};
  WavSpec spec;
  spec.sample_rate = 44100;
  spec.channels = 2;
  spec.encoding = WavSpec::Encoding::kFloat32;
  const std::string path = (dir.path() / "f32.wav").string();
  WriteWav(path, samples, spec);
  const WavData read = ReadWav(path);
  CHECK(read.spec.sample_rate == 44100);
  CHECK(read.spec.channels == 2);
  REQUIRE(read.samples.size() == samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    CHECK(read.samples[i] == samples[i]);
  }
}

TEST_CASE("16-bit -32768 normalizes to -1.0") {
  test::TempDir dir;
  // Hand-build a minimal PCM16 mono file holding {-32768, 0, 32767}.
  std::string bytes;
  const auto u16 = [&bytes](uint16_t v) {
    bytes.push_back(static_cast<char>(v & 0xff));
    bytes.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  const auto u32 = [&bytes](uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
  };
  bytes += "RIFF";
  u32(36 + 6);
  bytes += "WAVEfmt ";
  u32(16);
  u16(1);
  u16(1);
  u32(44100);
  u32(88200);
  u16(2);
  u16(16);
  bytes += "data";
  u32(6);
  u16(0x8000);  // -32768
  u16(0);
  u16(0x7fff);  // 32767
  const std::string path = dir.WriteFile("pcm16.wav", bytes);

  const WavData read = ReadWav(path);
  REQUIRE(read.samples.size() == 3);
  CHECK(read.samples[0] == -1.0f);
  CHECK(read.samples[1] == 0.0f);
  CHECK(read.samples[2] == doctest::Approx(32767.0 / 32768.0));
}

TEST_CASE("malformed and unsupported WAVs are rejected") {
  test::TempDir dir;
  const std::string garbage = dir.WriteFile("bad.wav", "not a wav at all");
  CHECK_THROWS_AS(ReadWav(garbage), std::runtime_error);
}

TEST_CASE("trajectory interpolation") {
  const Trajectory trajectory = ParseTrajectoryText(
      "key 0 0 0 0 0\n"
      "key 10 10 0 0 0\n",
      "traj");
  ListenerSpec fallback;
  Vec3 pos;
  double yaw = 0.0;
  trajectory.PoseAt(5.0, fallback, &pos, &yaw);
  CHECK(pos.x == doctest::Approx(5.0));

  SUBCASE("yaw interpolates along the shortest arc") {
    const double deg = kPi / 180.0;
    std::ostringstream text;
    text << "key 0 0 0 0 " << 170.0 * deg << "\n";
    text << "key 1 0 0 0 " << -170.0 * deg << "\n";
    const Trajectory wrap = ParseTrajectoryText(text.str(), "traj");
    wrap.PoseAt(0.5, fallback, &pos, &yaw);
    CHECK(yaw == doctest::Approx(kPi).epsilon(1e-9));
  }
  SUBCASE("pose holds beyond keyframe coverage") {
    const Trajectory held = ParseTrajectoryText(
        "key 0 0 0 0 0\n"
        "key 3 6 0 0 0\n"
        "move 5 0 1 1 1\n",  // event after coverage is accepted
        "traj");
    held.PoseAt(5.0, fallback, &pos, &yaw);
    CHECK(pos.x == doctest::Approx(6.0));
    CHECK(held.Duration() == doctest::Approx(5.0));
  }
}

TEST_CASE("trajectory validation errors carry line numbers") {
  CHECK_THROWS_WITH_AS(
      ParseTrajectoryText("key 1 0 0 0 0\nkey 1 1 0 0 0\n", "t.traj"),
      doctest::Contains("t.traj:2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(ParseTrajectoryText("stop 1 0\n", "t.traj"),
                       doctest::Contains("stop without a start"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(ParseTrajectoryText("key 0 0 0\n", "t.traj"),
                       doctest::Contains("t.traj:1"), std::runtime_error);
  CHECK_THROWS_AS(ParseTrajectoryText(
                      "start 0 0 a.wav 1\nstart 1 0 b.wav 1\n", "t.traj"),
                  std::runtime_error);
}

// Writes the standard test assets (scene, tone, trajectory) into |dir|.
struct RenderFixture {
  explicit RenderFixture(test::TempDir& dir, double seconds = 1.3) {
    scene = dir.WriteFile("scene.txt",
                          test::ShoeboxSceneText({6, 5, 3}, 0.3));
    std::vector<float> tone(static_cast<size_t>(44100 * seconds));
    for (size_t i = 0; i < tone.size(); ++i) {
      tone[i] =
          static_cast<float>(0.4 * std::sin(kTwoPi * 330.0 * i / 44100.0));
    }
    WavSpec spec;
    spec.sample_rate = 44100;
    spec.channels = 1;
    wav = (dir.path() / "tone.wav").string();
    WriteWav(wav, tone, spec);
    std::ostringstream traj;
    traj << "key 0 4.5 2.5 1.5 0\n";
    traj << "key " << seconds << " 1.5 2.5 1.5 0\n";
    traj << "start 0 0 " << wav << " 1\n";
    trajectory = dir.WriteFile("walk.traj", traj.str());
  }
  std::string scene;
  std::string wav;
  std::string trajectory;
};

TEST_CASE("offline render: exact length, determinism, silence") {
  test::TempDir dir;
  RenderFixture fixture(dir);

  RenderOptions options;
  options.scene_path = fixture.scene;
  options.trajectory_path = fixture.trajectory;
  options.out_path = (dir.path() / "out_a.wav").string();
  options.quiet = true;
  CmdRender(options);

  const WavData out = ReadWav(options.out_path);
  CHECK(out.spec.channels == 2);
  // Length exactness: duration 1.3 s at 44.1 kHz.
  CHECK(out.frames() == 57330);
  for (const float v : out.samples) CHECK(std::isfinite(v));

  SUBCASE("same inputs render byte-identical WAVs") {
    RenderOptions again = options;
    again.out_path = (dir.path() / "out_b.wav").string();
    CmdRender(again);
    CHECK(test::ReadFileBytes(options.out_path) ==
          test::ReadFileBytes(again.out_path));
  }

  SUBCASE("no source events produce a silent WAV of correct length") {
    RenderOptions silent = options;
    silent.trajectory_path = dir.WriteFile(
        "silent.traj", "key 0 3 2.5 1.5 0\nkey 2 1.5 2.5 1.5 0\n");
    silent.out_path = (dir.path() / "silent.wav").string();
    CmdRender(silent);
    const WavData quiet = ReadWav(silent.out_path);
    CHECK(quiet.frames() == 88200);
    for (const float v : quiet.samples) CHECK(v == 0.0f);
  }

  SUBCASE("sample-rate mismatch errors name both rates") {
    RenderOptions wrong = options;
    wrong.sample_rate = 48000;
    wrong.out_path = (dir.path() / "out48.wav").string();
    try {
      CmdRender(wrong);
      FAIL("expected a sample-rate error");
    } catch (const std::runtime_error& error) {
      const std::string message = error.what();
      CHECK(message.find("44100") != std::string::npos);
      CHECK(message.find("48000") != std::string::npos);
    }
  }
}

TEST_CASE("bake command is deterministic across runs and thread counts") {
  test::TempDir dir;
  const std::string scene = dir.WriteFile(
      "scene.txt", test::ShoeboxSceneText({5, 4, 3}, 0.2));

  BakeOptions options;
  options.scene_path = scene;
  options.rays = 800;
  options.seed = 7;
  options.probes = 2;
  options.quiet = true;

  options.out_path = (dir.path() / "a.baked").string();
  options.threads = 1;
  CmdBake(options);
  options.out_path = (dir.path() / "b.baked").string();
  options.threads = 4;
  CmdBake(options);
  CHECK(test::ReadFileBytes((dir.path() / "a.baked").string()) ==
        test::ReadFileBytes((dir.path() / "b.baked").string()));

  SUBCASE("probe count 0 is a usage error") {
    BakeOptions bad = options;
    bad.probes = 0;
    bad.out_path = (dir.path() / "c.baked").string();
    CHECK_THROWS_AS(CmdBake(bad), std::runtime_error);
  }
}

TEST_CASE("bench: zero sources is clean, same seed repeats its checksum") {
  test::TempDir dir;
  const std::string scene = dir.WriteFile(
      "scene.txt", test::ShoeboxSceneText({5, 4, 3}, 0.2));

  BenchOptions options;
  options.scene_path = scene;
  options.sources = 2;
  options.seconds = 0.5;
  options.seed = 11;
  const BenchReport a = CmdBench(options);
  const BenchReport b = CmdBench(options);
  CHECK(a.checksum == b.checksum);
  CHECK(a.rtf > 0.0);

  BenchOptions none = options;
  none.sources = 0;
  const BenchReport empty = CmdBench(none);
  CHECK(empty.rtf == 0.0);
}

TEST_CASE("validate flags degenerate scenes and passes clean ones") {
  test::TempDir dir;
  const std::string clean = dir.WriteFile(
      "clean.txt", test::ShoeboxSceneText({5, 4, 3}, 0.2));
  CHECK(CmdValidate(clean) == 0);

  const std::string degenerate = dir.WriteFile(
      "degenerate.txt",
      "scene 1\n"
      "mesh bad inline\n"
      "v 0 0 0\nv 1 0 0\nv 2 0 0\nv 0 1 0\n"
      "t 0 1 2 label wall\n"
      "t 0 1 3 label wall\n"
      "endmesh\n"
      "object 0 bad 0 0 0 0 0 1\n");
  CHECK(CmdValidate(degenerate) == 1);
}

#ifdef AURAL_CLI_PATH
TEST_CASE("CLI exits nonzero with an error: prefix on failures") {
  test::TempDir dir;
  const std::string out = (dir.path() / "stderr.txt").string();
  const std::string command = std::string(AURAL_CLI_PATH) +
                              " validate /nonexistent.scene 2> " + out;
  const int status = std::system(command.c_str());
  CHECK(status != 0);
  const std::string captured = test::ReadFileBytes(out);
  CHECK(captured.find("error: ") != std::string::npos);

  // --help succeeds per subcommand.
  const std::string help = std::string(AURAL_CLI_PATH) +
                           " bake --help > /dev/null 2>&1";
  CHECK(std::system(help.c_str()) == 0);
}
#endif

TEST_SUITE_END();

}  // namespace
}  // namespace aural
