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

#include "nap/dataio/synth.hpp"

#include "nap/errors.hpp"
#include "nap/numeric/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace nap::dataio
{
namespace
{
constexpr double kLattice = 0x1.0p-20;

double snap(double v, double quantum)
{
  return std::nearbyint(v / quantum) * quantum;
}

struct Walker
{
  std::int64_t id = 0;
  Behavior behavior = Behavior::kLinear;
  std::size_t start = 0;
  std::size_t length = 0;
  // Per-step positions, filled by the planner (linear/turn) or simulation (avoid).
  std::vector<Point2> path;
  // Avoidance walkers: goal velocity (m/s).
  Point2 desired_velocity;
};

std::optional<std::size_t> active_index(const Walker & w, std::size_t step)
{
  if (step < w.start || step >= w.start + w.length) {
    return std::nullopt;
  }
  return step - w.start;
}
}  // namespace

std::string_view behavior_name(Behavior b)
{
  switch (b) {
    case Behavior::kLinear:
      return "linear";
    case Behavior::kTurn:
      return "turn";
    case Behavior::kAvoid:
      return "avoid";
  }
  return "linear";
}

Behavior parse_behavior(std::string_view name)
{
  if (name == "linear") {
    return Behavior::kLinear;
  }
  if (name == "turn") {
    return Behavior::kTurn;
  }
  if (name == "avoid") {
    return Behavior::kAvoid;
  }
  throw ConfigError("unknown behavior '" + std::string(name) + "'");
}

BehaviorMix BehaviorMix::parse(std::string_view text)
{
  if (text == "linear") {
    return {1.0, 0.0, 0.0};
  }
  if (text == "turn") {
    return {0.0, 1.0, 0.0};
  }
  if (text == "avoid") {
    return {0.0, 0.0, 1.0};
  }
  if (text == "mixed") {
    return {1.0, 1.0, 1.0};
  }
  BehaviorMix mix{0.0, 0.0, 0.0};
  std::string s(text);
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("behavior mix item '" + item + "' must be name:weight");
    }
    double w = 0.0;
    try {
      w = std::stod(item.substr(colon + 1));
    } catch (const std::exception &) {
      throw ConfigError("behavior mix weight in '" + item + "' is not a number");
    }
    if (!(w >= 0.0)) {
      throw ConfigError("behavior mix weights must be non-negative");
    }
    switch (parse_behavior(item.substr(0, colon))) {
      case Behavior::kLinear:
        mix.linear = w;
        break;
      case Behavior::kTurn:
        mix.turn = w;
        break;
      case Behavior::kAvoid:
        mix.avoid = w;
        break;
    }
  }
  if (mix.linear + mix.turn + mix.avoid <= 0.0) {
    throw ConfigError("behavior mix has zero total weight");
  }
  return mix;
}

std::string BehaviorMix::to_string() const
{
  return "linear:" + format_real(linear) + ",turn:" + format_real(turn) + ",avoid:" + format_real(avoid);
}

SynthResult synth_dataset(const SynthOptions & options)
{
  if (options.min_track < 2 || options.max_track < options.min_track || options.n_steps < options.max_track) {
    throw ConfigError("synthetic track lengths must satisfy 2 <= min <= max <= n_steps");
  }
  if (!(options.extent > 0.0) || !(options.cell_size > 0.0)) {
    throw ConfigError("synthetic extent and cell size must be positive");
  }
  numeric::Rng rng(numeric::mix_seed(options.seed, {0x5e7ULL}));
  const double total = options.mix.linear + options.mix.turn + options.mix.avoid;
  if (!(total > 0.0)) {
    throw ConfigError("behavior mix has zero total weight");
  }

  SynthResult result;

  // Scene: one rectangular obstacle near the middle.
  SceneGrid & grid = result.grid;
  grid.scene_id = options.scene_id;
  grid.cell_size = options.cell_size;
  grid.channels = 1;
  grid.height = grid.width = static_cast<std::size_t>(std::ceil(options.extent / options.cell_size));
  grid.origin = {0.0, 0.0};
  grid.data.assign(grid.height * grid.width, 0.0);
  const double ob_cx = rng.uniform(0.35, 0.65) * options.extent;
  const double ob_cy = rng.uniform(0.35, 0.65) * options.extent;
  const double ob_hw = rng.uniform(1.5, 3.0);
  const double ob_hh = rng.uniform(1.5, 3.0);
  for (std::size_t r = 0; r < grid.height; ++r) {
    const double y = (static_cast<double>(r) + 0.5) * options.cell_size;
    for (std::size_t c = 0; c < grid.width; ++c) {
      const double x = (static_cast<double>(c) + 0.5) * options.cell_size;
      if (std::abs(x - ob_cx) <= ob_hw && std::abs(y - ob_cy) <= ob_hh) {
        grid.at(0, r, c) = 1.0;
      }
    }
  }

  const double margin = 0.3 * options.extent;
  auto random_heading = [&rng]() { return rng.uniform(0.0, 2.0 * std::numbers::pi); };

  std::vector<Walker> walkers;
  std::int64_t next_id = 1;
  while (walkers.size() < options.n_peds) {
    const double pick = rng.uniform() * total;
    const Behavior behavior = pick < options.mix.linear ? Behavior::kLinear
                              : pick < options.mix.linear + options.mix.turn ? Behavior::kTurn
                                                                             : Behavior::kAvoid;
    const std::size_t length = options.min_track + rng.below(options.max_track - options.min_track + 1);
    const std::size_t start = rng.below(options.n_steps - length + 1);
    const double speed = rng.uniform(options.min_speed, options.max_speed);
    const double heading = random_heading();
    const Point2 mid{rng.uniform(margin, options.extent - margin), rng.uniform(margin, options.extent - margin)};

    if (behavior == Behavior::kAvoid) {
      // A crossing pair walking head-on with a small lateral offset.
      const bool pair_fits = walkers.size() + 2 <= options.n_peds;
      const std::size_t members = pair_fits ? 2 : 1;
      const double half_path = 0.5 * speed * kTimeStep * static_cast<double>(length - 1);
      const Point2 dir{std::cos(heading), std::sin(heading)};
      const Point2 normal{-dir.y, dir.x};
      const double lateral = rng.uniform(-0.4, 0.4);
      for (std::size_t m = 0; m < members; ++m) {
        const double sign = m == 0 ? 1.0 : -1.0;
        Walker w;
        w.id = next_id++;
        w.behavior = Behavior::kAvoid;
        w.start = start;
        w.length = length;
        const Point2 begin{mid.x - sign * dir.x * half_path + sign * normal.x * lateral,
                           mid.y - sign * dir.y * half_path + sign * normal.y * lateral};
        w.path.push_back(begin);
        w.desired_velocity = {sign * dir.x * speed, sign * dir.y * speed};
        walkers.push_back(std::move(w));
      }
      continue;
    }

    Walker w;
    w.id = next_id++;
    w.behavior = behavior;
    w.start = start;
    w.length = length;
    Point2 step{snap(std::cos(heading) * speed * kTimeStep, kLattice),
                snap(std::sin(heading) * speed * kTimeStep, kLattice)};
    const double half = 0.5 * static_cast<double>(length - 1);
    const Point2 begin{snap(mid.x - step.x * half, kLattice), snap(mid.y - step.y * half, kLattice)};
    if (behavior == Behavior::kLinear) {
      for (std::size_t k = 0; k < length; ++k) {
        const double kk = static_cast<double>(k);
        w.path.push_back({begin.x + step.x * kk, begin.y + step.y * kk});
      }
    } else {
      const std::size_t turn_at = 3 + rng.below(length - 4);
      const double side = rng.uniform() < 0.5 ? 1.0 : -1.0;
      Point2 p = begin;
      w.path.push_back(p);
      for (std::size_t k = 1; k < length; ++k) {
        if (k == turn_at) {
          step = Point2{-side * step.y, side * step.x};
        }
        p = {p.x + step.x, p.y + step.y};
        w.path.push_back(p);
      }
    }
    walkers.push_back(std::move(w));
  }

  // Avoidance walkers are simulated step by step: steer along the desired
  // velocity plus a repulsion from everyone within 2 m, and refuse any move
  // that would come closer than min_separation to another walker.
  std::vector<std::size_t> avoiders;
  for (std::size_t i = 0; i < walkers.size(); ++i) {
    if (walkers[i].behavior == Behavior::kAvoid) {
      avoiders.push_back(i);
    }
  }
  auto position_at = [&walkers](std::size_t idx, std::size_t step) -> std::optional<Point2> {
    const Walker & w = walkers[idx];
    auto k = active_index(w, step);
    if (!k || *k >= w.path.size()) {
      return std::nullopt;
    }
    return w.path[*k];
  };
  std::vector<bool> dropped(walkers.size(), false);
  auto clear_of_others = [&](std::size_t self, Point2 candidate, std::size_t step) {
    for (std::size_t j = 0; j < walkers.size(); ++j) {
      if (j == self || dropped[j]) {
        continue;
      }
      // Walkers already advanced to `step` are compared at `step`, the rest at their latest position.
      auto other = position_at(j, step);
      if (!other && step > 0) {
        other = position_at(j, step - 1);
        if (other && walkers[j].behavior != Behavior::kAvoid) {
          other.reset();
        }
      }
      if (other && distance(*other, candidate) < options.min_separation) {
        return false;
      }
    }
    return true;
  };

  for (std::size_t step = 0; step < options.n_steps; ++step) {
    for (std::size_t idx : avoiders) {
      Walker & w = walkers[idx];
      if (dropped[idx]) {
        continue;
      }
      auto k = active_index(w, step);
      if (!k) {
        continue;
      }
      if (*k == 0) {
        if (!clear_of_others(idx, w.path[0], step)) {
          dropped[idx] = true;
        }
        continue;
      }
      const Point2 current = w.path.back();
      Point2 velocity = w.desired_velocity;
      for (std::size_t j = 0; j < walkers.size(); ++j) {
        if (j == idx || dropped[j]) {
          continue;
        }
        auto other = position_at(j, step - 1);
        if (!other) {
          continue;
        }
        const double d = distance(current, *other);
        if (d < 2.0 && d > 1e-9) {
          const double push = 1.2 * std::exp(-(d - 0.5) / 0.6);
          velocity.x += push * (current.x - other->x) / d;
          velocity.y += push * (current.y - other->y) / d;
        }
      }
      const double speed = std::hypot(velocity.x, velocity.y);
      const double cap = 2.0;
      if (speed > cap) {
        velocity = {velocity.x * cap / speed, velocity.y * cap / speed};
      }
      const Point2 candidate{snap(current.x + velocity.x * kTimeStep, kLattice),
                             snap(current.y + velocity.y * kTimeStep, kLattice)};
      w.path.push_back(clear_of_others(idx, candidate, step) ? candidate : current);
    }
  }

  for (std::size_t i = 0; i < walkers.size(); ++i) {
    if (dropped[i]) {
      continue;
    }
    const Walker & w = walkers[i];
    result.behaviors[w.id] = w.behavior;
    for (std::size_t k = 0; k < w.path.size(); ++k) {
      result.records.push_back({static_cast<std::int64_t>(w.start + k) * options.frame_step, w.id,
                                quantize_coordinate(w.path[k].x), quantize_coordinate(w.path[k].y)});
    }
  }
  std::sort(result.records.begin(), result.records.end(), [](const FrameRecord & a, const FrameRecord & b) {
    return std::pair(a.frame_id, a.ped_id) < std::pair(b.frame_id, b.ped_id);
  });
  return result;
}

std::string format_behaviors(const std::map<std::int64_t, Behavior> & behaviors)
{
  std::string out = "# ped_id behavior\n";
  for (const auto & [id, b] : behaviors) {
    out += std::to_string(id) + ' ' + std::string(behavior_name(b)) + '\n';
  }
  return out;
}

std::map<std::int64_t, Behavior> parse_behaviors(std::string_view text, std::string_view source_name)
{
  std::map<std::int64_t, Behavior> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream fields(line);
    std::int64_t id = 0;
    std::string name;
    if (!(fields >> id)) {
      continue;
    }
    if (!(fields >> name)) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": missing behavior");
    }
    try {
      out[id] = parse_behavior(name);
    } catch (const ConfigError & e) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace nap::dataio
