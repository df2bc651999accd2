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

#ifndef NAP_CLI__RUN_CONFIG_HPP_
#define NAP_CLI__RUN_CONFIG_HPP_

#include "nap/config_text.hpp"
#include "nap/model/config.hpp"
#include "nap/train/trainer.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace nap::cli
{

/**
 * @brief Everything a command needs, as "key = value" text.
 *
 * Model and training keys share one namespace with the run keys below;
 * `seed` is the single source of randomness.
 */
struct RunConfig
{
  model::NapConfig model;
  train::TrainConfig train;
  std::string data_dir = "data";
  std::string out_dir = "run";
  std::string test_scene;
  /// Empty means every scene in data_dir except the test scene.
  std::vector<std::string> train_scenes;
  std::size_t window_stride = 1;
  std::size_t synth_scenes = 5;
  std::size_t synth_peds = 100;
  std::string synth_mix = "mixed";

  /// Applies one key; throws ConfigError for unknown keys or bad values.
  void apply(std::string_view key, std::string_view value);
  void apply_all(const KeyValues & entries);
  void validate() const;
  KeyValues to_key_values() const;
  std::string format() const { return format_key_values(to_key_values()); }

  static RunConfig load(const std::filesystem::path & path);
};

std::string join(const std::vector<std::string> & items, char sep = ',');
std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace nap::cli

#endif  // NAP_CLI__RUN_CONFIG_HPP_
