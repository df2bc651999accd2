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

#ifndef NAP__DATAIO__SYNTH_HPP_
#define NAP__DATAIO__SYNTH_HPP_

#include "nap/dataio/records.hpp"
#include "nap/dataio/scene_grid.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nap::dataio
{

enum class Behavior
{
  kLinear,
  kTurn,
  kAvoid,
};

std::string_view behavior_name(Behavior b);
Behavior parse_behavior(std::string_view name);

/// Relative weights of the three walker types.
struct BehaviorMix
{
  double linear = 1.0;
  double turn = 1.0;
  double avoid = 1.0;

  /// "linear", "turn", "avoid", "mixed", or "linear:w,turn:w,avoid:w".
  static BehaviorMix parse(std::string_view text);
  std::string to_string() const;
};

struct SynthOptions
{
  std::uint64_t seed = 0;
  std::size_t n_peds = 100;
  BehaviorMix mix;
  std::string scene_id = "synth";
  /// Time steps in the scene timeline (0.4 s each).
  std::size_t n_steps = 160;
  /// Frame-id increment per time step (ETH/UCY files use 10).
  std::int64_t frame_step = 10;
  std::size_t min_track = 20;
  std::size_t max_track = 32;
  double min_speed = 0.8;
  double max_speed = 1.6;
  /// Scene extent in meters and grid resolution.
  double extent = 40.0;
  double cell_size = 0.5;
  /// Smallest separation avoidance walkers keep from every other walker.
  double min_separation = 0.3;
};

inline constexpr double kTimeStep = 0.4;

struct SynthResult
{
  std::vector<FrameRecord> records;
  SceneGrid grid;
  std::map<std::int64_t, Behavior> behaviors;
};

/**
 * Desk-scale crowd generator: constant-velocity walkers, walkers making one
 * 90 degree turn, and pairs of walkers crossing each other while steering
 * apart. Linear walkers move on a dyadic lattice so constant-velocity
 * extrapolation reproduces them exactly. Deterministic for a given seed.
 */
SynthResult synth_dataset(const SynthOptions & options);

/// "ped_id behavior" lines, sorted by id.
std::string format_behaviors(const std::map<std::int64_t, Behavior> & behaviors);
std::map<std::int64_t, Behavior> parse_behaviors(std::string_view text, std::string_view source_name);

}  // namespace nap::dataio

#endif  // NAP__DATAIO__SYNTH_HPP_
