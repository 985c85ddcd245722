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

// Command-line front end: bake | render | probes | bench | validate.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "aural/app/commands.h"

int main(int argc, char** argv) {
  CLI::App app{"Geometric-acoustics reverb baking and binaural rendering"};
  app.require_subcommand(1);

  // bake ----------------------------------------------------------------
  auto* bake = app.add_subcommand(
      "bake", "Trace reverb probes for a scene and write baked data");
  aural::BakeOptions bake_options;
  int bake_probes = 0;
  double bake_spacing = 0.0;
  bake->add_option("scene", bake_options.scene_path, "Scene file")
      ->required();
  bake->add_option("--out,-o", bake_options.out_path, "Output baked file")
      ->required();
  auto* probes_flag = bake->add_option(
      "--probes", bake_probes, "Number of probes to place");
  auto* spacing_flag = bake->add_option(
      "--spacing", bake_spacing, "Probe grid spacing in meters (default 2)");
  bake->add_option("--rays", bake_options.rays,
                   "Rays per probe (default 10000)");
  bake->add_option("--bounces", bake_options.bounces,
                   "Maximum bounces per ray (default 200)");
  bake->add_option("--seed", bake_options.seed, "RNG seed (default 0)");
  bake->add_option("--threads", bake_options.threads,
                   "Worker threads (0 = AURAL_THREADS env or hardware)");

  // render --------------------------------------------------------------
  auto* render = app.add_subcommand(
      "render", "Offline-render a trajectory to a stereo WAV");
  aural::RenderOptions render_options;
  render->add_option("scene", render_options.scene_path, "Scene file")
      ->required();
  render->add_option("trajectory", render_options.trajectory_path,
                     "Trajectory file")
      ->required();
  render->add_option("out", render_options.out_path, "Output WAV path")
      ->required();
  render->add_option("--baked", render_options.baked_path,
                     "Baked data file (omit for direct-only rendering)");
  render->add_option("--fs", render_options.sample_rate,
                     "Session sample rate (default 44100)");
  render->add_option("--block", render_options.block_size,
                     "Block size in samples (default 1024)");

  // probes --------------------------------------------------------------
  auto* probes = app.add_subcommand("probes", "Print a baked-data table");
  std::string probes_path;
  probes->add_option("baked", probes_path, "Baked data file")->required();

  // bench ---------------------------------------------------------------
  auto* bench = app.add_subcommand(
      "bench", "Measure the real-time factor with synthetic sources");
  aural::BenchOptions bench_options;
  bench->add_option("scene", bench_options.scene_path, "Scene file")
      ->required();
  bench->add_option("--baked", bench_options.baked_path, "Baked data file");
  bench->add_option("--sources", bench_options.sources,
                    "Synthetic pink-noise sources (default 4)");
  bench->add_option("--seconds", bench_options.seconds,
                    "Audio seconds to render (default 10)");
  bench->add_option("--seed", bench_options.seed,
                    "Trajectory/noise seed (default 1)");
  bench->add_option("--fs", bench_options.sample_rate,
                    "Session sample rate (default 44100)");
  bench->add_option("--block", bench_options.block_size,
                    "Block size in samples (default 1024)");

  // validate ------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "Lint a scene file");
  std::string validate_path;
  validate->add_option("scene", validate_path, "Scene file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bake->parsed()) {
      if (*probes_flag) bake_options.probes = bake_probes;
      if (*spacing_flag) bake_options.spacing = bake_spacing;
      aural::CmdBake(bake_options);
    } else if (render->parsed()) {
      aural::CmdRender(render_options);
    } else if (probes->parsed()) {
      aural::CmdProbes(probes_path);
    } else if (bench->parsed()) {
      aural::CmdBench(bench_options);
    } else if (validate->parsed()) {
      aural::CmdValidate(validate_path);
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return 0;
}
