// Copyright 2026 The NAP Trajectory Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nap_cli/experiments.hpp"

#include "nap/errors.hpp"
#include "nap/model/checkpoint.hpp"
#include "nap/numeric/random.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nap::cli
{
namespace fs = std::filesystem;

std::string read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path & path, const std::string & text)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw DataError("failed writing " + path.string());
  }
}

std::vector<std::string> list_scenes(const fs::path & dir)
{
  if (!fs::is_directory(dir)) {
    throw DataError("data directory " + dir.string() + " does not exist");
  }
  std::vector<std::string> ids;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

namespace
{
dataio::SynthOptions synth_options(const RunConfig & cfg, std::size_t index)
{
  dataio::SynthOptions opts;
  opts.seed = numeric::mix_seed(cfg.train.seed, {0x5359, index});
  opts.n_peds = cfg.synth_peds;
  opts.mix = dataio::BehaviorMix::parse(cfg.synth_mix);
  opts.scene_id = "synth" + std::to_string(index);
  return opts;
}
}  // namespace

SceneSet synthetic_scenes(const RunConfig & cfg)
{
  SceneSet out;
  for (std::size_t i = 0; i < cfg.synth_scenes; ++i) {
    const auto opts = synth_options(cfg, i);
    auto result = dataio::synth_dataset(opts);
    out[opts.scene_id] = {opts.scene_id, std::move(result.records), std::move(result.grid),
                          std::move(result.behaviors)};
  }
  return out;
}

std::vector<std::pair<std::string, std::size_t>> write_synthetic(const RunConfig & cfg, const fs::path & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::vector<std::pair<std::string, std::size_t>> counts;
  for (const auto & [id, scene] : synthetic_scenes(cfg)) {
    const auto opts = synth_options(cfg, counts.size());
    dataio::save_scene(dir, scene,
                       "synthetic scene " + id + " seed=" + std::to_string(opts.seed) + " peds=" +
                         std::to_string(cfg.synth_peds) + " mix=" + cfg.synth_mix);
    counts.push_back({id, scene.records.size()});
  }
  return counts;
}

SceneSet load_scenes(const fs::path & dir, const std::vector<std::string> & ids)
{
  SceneSet out;
  for (const auto & id : ids) {
    out[id] = dataio::load_scene(dir, id);
  }
  return out;
}

dataio::SplitPlan resolve_split(const RunConfig & cfg, const std::vector<std::string> & available)
{
  if (cfg.test_scene.empty()) {
    throw ConfigError("no test scene given (set test_scene or use --test-scene)");
  }
  if (std::find(available.begin(), available.end(), cfg.test_scene) == available.end()) {
    throw DataError("test scene '" + cfg.test_scene + "' not found in " + cfg.data_dir);
  }
  dataio::SplitPlan plan;
  if (cfg.train_scenes.empty()) {
    plan = dataio::leave_one_out(available, cfg.test_scene);
  } else {
    for (const auto & id : cfg.train_scenes) {
      if (std::find(available.begin(), available.end(), id) == available.end()) {
        throw DataError("training scene '" + id + "' not found in " + cfg.data_dir);
      }
    }
    plan = {cfg.train_scenes, cfg.test_scene};
  }
  plan.validate();
  return plan;
}

std::vector<model::PreparedSample> prepare_scenes(const SceneSet & scenes, const std::vector<std::string> & ids,
                                                  const model::NapConfig & config, std::size_t stride)
{
  std::vector<model::PreparedSample> out;
  for (const auto & id : ids) {
    auto it = scenes.find(id);
    if (it == scenes.end()) {
      throw DataError("scene '" + id + "' is not loaded");
    }
    auto part = train::prepare_scene(it->second, config, stride);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::uint64_t init_seed(std::uint64_t run_seed)
{
  return numeric::mix_seed(run_seed, {0x494e4954});
}

std::uint64_t eval_seed(std::uint64_t run_seed)
{
  return numeric::mix_seed(run_seed, {0x4556414c});
}

TrainedRun train_on_split(const RunConfig & cfg, const SceneSet & scenes, const dataio::SplitPlan & plan,
                          const std::function<void(const train::EpochLog &)> & on_epoch)
{
  cfg.validate();
  plan.validate();
  const auto data = prepare_scenes(scenes, plan.train_scenes, cfg.model, cfg.window_stride);
  TrainedRun run{model::NapModel(cfg.model, init_seed(cfg.train.seed)), {}, plan};
  run.log = train::train(run.model, data, plan, cfg.train, on_epoch);
  return run;
}

std::vector<model::PreparedSample> behavior_subset(const std::vector<model::PreparedSample> & samples,
                                                   const dataio::SceneData & scene, dataio::Behavior behavior)
{
  std::vector<model::PreparedSample> out;
  for (const auto & ps : samples) {
    auto it = scene.behaviors.find(ps.sample.ped_id);
    if (ps.sample.scene_id == scene.scene_id && it != scene.behaviors.end() && it->second == behavior) {
      out.push_back(ps);
    }
  }
  return out;
}

void write_run_directory(const fs::path & dir, const RunConfig & cfg, const TrainedRun & run,
                         const SceneSet & scenes)
{
  RunConfig resolved = cfg;
  resolved.train_scenes = run.plan.train_scenes;
  resolved.test_scene = run.plan.test_scene;
  resolved.out_dir = dir.string();
  write_file(dir / "run.cfg", resolved.format());

  std::string inputs = "# scene trajectory_hash grid_hash\n";
  for (const auto & [id, scene] : scenes) {
    inputs += id + " " + fnv1a_hex(dataio::format_trajectory(scene.records, "")) + " " +
              fnv1a_hex(dataio::format_scene_grid(scene.grid)) + "\n";
  }
  inputs += "# training data " + run.log.data_hash + "\n";
  write_file(dir / "inputs.txt", inputs);
  model::save_checkpoint(run.model, dir / "checkpoint.nap");
  write_file(dir / "train.log", run.log.format());
}

}  // namespace nap::cli
