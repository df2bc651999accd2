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

#include "nap_cli/run_config.hpp"

#include "nap/dataio/synth.hpp"
#include "nap/errors.hpp"

#include <fstream>
#include <sstream>

namespace nap::cli
{

std::string join(const std::vector<std::string> & items, char sep)
{
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_list(std::string_view text, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(sep, start), text.size());
    std::string item(text.substr(start, end - start));
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) {
      out.push_back(item.substr(first, last - first + 1));
    }
    start = end + 1;
  }
  return out;
}

void RunConfig::apply(std::string_view key, std::string_view value)
{
  if (model.apply(key, value) || train.apply(key, value)) {
    return;
  }
  if (key == "data_dir") {
    data_dir = value;
  } else if (key == "out_dir") {
    out_dir = value;
  } else if (key == "test_scene") {
    test_scene = value;
  } else if (key == "train_scenes") {
    train_scenes = split_list(value);
  } else if (key == "window_stride") {
    window_stride = parse_size(key, value);
  } else if (key == "synth_scenes") {
    synth_scenes = parse_size(key, value);
  } else if (key == "synth_peds") {
    synth_peds = parse_size(key, value);
  } else if (key == "synth_mix") {
    dataio::BehaviorMix::parse(value);
    synth_mix = value;
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void RunConfig::apply_all(const KeyValues & entries)
{
  for (const auto & [k, v] : entries) {
    apply(k, v);
  }
}

void RunConfig::validate() const
{
  model.validate();
  train.validate();
  if (window_stride == 0) {
    throw ConfigError("window_stride must be at least 1");
  }
}

KeyValues RunConfig::to_key_values() const
{
  KeyValues out = model.to_key_values();
  for (auto & kv : train.to_key_values()) {
    out.push_back(std::move(kv));
  }
  out.push_back({"data_dir", data_dir});
  out.push_back({"out_dir", out_dir});
  out.push_back({"test_scene", test_scene});
  out.push_back({"train_scenes", join(train_scenes)});
  out.push_back({"window_stride", std::to_string(window_stride)});
  out.push_back({"synth_scenes", std::to_string(synth_scenes)});
  out.push_back({"synth_peds", std::to_string(synth_peds)});
  out.push_back({"synth_mix", synth_mix});
  return out;
}

RunConfig RunConfig::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig cfg;
  cfg.apply_all(parse_key_values(buf.str(), path.string()));
  return cfg;
}

}  // namespace nap::cli
