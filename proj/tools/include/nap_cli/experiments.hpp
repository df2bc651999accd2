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

#ifndef NAP_CLI__EXPERIMENTS_HPP_
#define NAP_CLI__EXPERIMENTS_HPP_

#include "nap/dataio/split.hpp"
#include "nap/eval/report.hpp"
#include "nap/model/nap_model.hpp"
#include "nap/train/trainer.hpp"
#include "nap_cli/run_config.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nap::cli
{

/// Scene ids with a trajectory file in `dir`, sorted.
std::vector<std::string> list_scenes(const std::filesystem::path & dir);

/// Writes cfg.synth_scenes synthetic scenes named synth0, synth1, ...; the
/// scene seeds derive from cfg.train.seed. Returns record counts per scene.
std::vector<std::pair<std::string, std::size_t>> write_synthetic(const RunConfig & cfg,
                                                                 const std::filesystem::path & dir);

/// Scenes kept in memory, keyed by id.
using SceneSet = std::map<std::string, dataio::SceneData>;

SceneSet load_scenes(const std::filesystem::path & dir, const std::vector<std::string> & ids);

/// Synthetic scenes generated in memory, exactly as write_synthetic would.
SceneSet synthetic_scenes(const RunConfig & cfg);

/// The split a run config describes over the available scene ids.
dataio::SplitPlan resolve_split(const RunConfig & cfg, const std::vector<std::string> & available);

/// Prepared samples of several scenes, concatenated in the given order.
std::vector<model::PreparedSample> prepare_scenes(const SceneSet & scenes, const std::vector<std::string> & ids,
                                                  const model::NapConfig & config, std::size_t stride);

struct TrainedRun
{
  model::NapModel model;
  train::TrainLog log;
  dataio::SplitPlan plan;
};

/// Initialises from the run seed and trains on the split's training scenes.
TrainedRun train_on_split(const RunConfig & cfg, const SceneSet & scenes, const dataio::SplitPlan & plan,
                          const std::function<void(const train::EpochLog &)> & on_epoch = {});

/// Seed of the parameter initialisation for a run seed.
std::uint64_t init_seed(std::uint64_t run_seed);
/// Seed of the evaluation noise streams for a run seed.
std::uint64_t eval_seed(std::uint64_t run_seed);

/// Samples of `scene` whose pedestrian carries the given behaviour label.
std::vector<model::PreparedSample> behavior_subset(const std::vector<model::PreparedSample> & samples,
                                                   const dataio::SceneData & scene, dataio::Behavior behavior);

/// Writes the resolved config, the input hashes, the checkpoint and the log.
void write_run_directory(const std::filesystem::path & dir, const RunConfig & cfg, const TrainedRun & run,
                         const SceneSet & scenes);

std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, const std::string & text);

}  // namespace nap::cli

#endif  // NAP_CLI__EXPERIMENTS_HPP_
