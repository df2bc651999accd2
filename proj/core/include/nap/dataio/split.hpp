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

#ifndef NAP__DATAIO__SPLIT_HPP_
#define NAP__DATAIO__SPLIT_HPP_

#include "nap/dataio/records.hpp"
#include "nap/dataio/scene_grid.hpp"
#include "nap/dataio/synth.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nap::dataio
{

/// Names of the five ETH/UCY scenes used by the leave-one-out protocol.
const std::vector<std::string> & benchmark_scene_ids();

/// Train on every scene except `test_scene`.
struct SplitPlan
{
  std::vector<std::string> train_scenes;
  std::string test_scene;

  /// Throws ConfigError if the test scene is also a training scene or no
  /// training scene is given.
  void validate() const;
  bool is_train_scene(const std::string & scene_id) const;
};

SplitPlan leave_one_out(const std::vector<std::string> & scenes, const std::string & test_scene);

/// One scene on disk: <dir>/<id>.txt trajectories, <dir>/<id>.grid scene grid,
/// optional <dir>/<id>.behaviors labels written by the synthetic generator.
struct SceneData
{
  std::string scene_id;
  std::vector<FrameRecord> records;
  SceneGrid grid;
  std::map<std::int64_t, Behavior> behaviors;
};

std::filesystem::path trajectory_path(const std::filesystem::path & dir, const std::string & scene_id);
std::filesystem::path grid_path(const std::filesystem::path & dir, const std::string & scene_id);
std::filesystem::path behaviors_path(const std::filesystem::path & dir, const std::string & scene_id);

/// Loads one scene; a missing grid file yields an obstacle-free 1x1 grid.
SceneData load_scene(const std::filesystem::path & dir, const std::string & scene_id,
                     const ParseOptions & options = {});

void save_scene(const std::filesystem::path & dir, const SceneData & scene, const std::string & header_comment);

}  // namespace nap::dataio

#endif  // NAP__DATAIO__SPLIT_HPP_
