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

#include "nap/dataio/split.hpp"

#include "nap/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nap::dataio
{

const std::vector<std::string> & benchmark_scene_ids()
{
  static const std::vector<std::string> ids{"ETH", "HOTEL", "UNIV", "ZARA1", "ZARA2"};
  return ids;
}

void SplitPlan::validate() const
{
  if (test_scene.empty()) {
    throw ConfigError("split has no test scene");
  }
  if (train_scenes.empty()) {
    throw ConfigError("split has no training scenes");
  }
  if (is_train_scene(test_scene)) {
    throw ConfigError("test scene '" + test_scene + "' is also a training scene");
  }
}

bool SplitPlan::is_train_scene(const std::string & scene_id) const
{
  return std::find(train_scenes.begin(), train_scenes.end(), scene_id) != train_scenes.end();
}

SplitPlan leave_one_out(const std::vector<std::string> & scenes, const std::string & test_scene)
{
  if (std::find(scenes.begin(), scenes.end(), test_scene) == scenes.end()) {
    throw ConfigError("test scene '" + test_scene + "' is not among the configured scenes");
  }
  SplitPlan plan;
  plan.test_scene = test_scene;
  for (const auto & s : scenes) {
    if (s != test_scene) {
      plan.train_scenes.push_back(s);
    }
  }
  plan.validate();
  return plan;
}

std::filesystem::path trajectory_path(const std::filesystem::path & dir, const std::string & scene_id)
{
  return dir / (scene_id + ".txt");
}

std::filesystem::path grid_path(const std::filesystem::path & dir, const std::string & scene_id)
{
  return dir / (scene_id + ".grid");
}

std::filesystem::path behaviors_path(const std::filesystem::path & dir, const std::string & scene_id)
{
  return dir / (scene_id + ".behaviors");
}

SceneData load_scene(const std::filesystem::path & dir, const std::string & scene_id, const ParseOptions & options)
{
  SceneData scene;
  scene.scene_id = scene_id;
  scene.records = parse_trajectory_file(trajectory_path(dir, scene_id), options);
  const auto gpath = grid_path(dir, scene_id);
  if (std::filesystem::exists(gpath)) {
    scene.grid = parse_scene_grid(gpath, scene_id);
  } else {
    scene.grid.scene_id = scene_id;
    scene.grid.height = scene.grid.width = scene.grid.channels = 1;
    scene.grid.cell_size = 1e6;
    scene.grid.origin = {-5e5, -5e5};
    scene.grid.data = {0.0};
  }
  const auto bpath = behaviors_path(dir, scene_id);
  if (std::filesystem::exists(bpath)) {
    std::ifstream in(bpath, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    scene.behaviors = parse_behaviors(buffer.str(), bpath.string());
  }
  return scene;
}

void save_scene(const std::filesystem::path & dir, const SceneData & scene, const std::string & header_comment)
{
  std::filesystem::create_directories(dir);
  write_trajectory_file(trajectory_path(dir, scene.scene_id), scene.records, header_comment);
  write_scene_grid(grid_path(dir, scene.scene_id), scene.grid);
  if (!scene.behaviors.empty()) {
    std::ofstream out(behaviors_path(dir, scene.scene_id), std::ios::binary);
    if (!out) {
      throw DataError("cannot write behaviors for scene '" + scene.scene_id + "'");
    }
    out << format_behaviors(scene.behaviors);
  }
}

}  // namespace nap::dataio
