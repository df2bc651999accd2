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

#include "nap/eval/baselines.hpp"

#include "nap/errors.hpp"

namespace nap::eval
{

Trajectory constant_position(const Trajectory & obs, std::size_t t_pred)
{
  if (obs.empty()) {
    throw DataError("constant-position baseline needs at least one observation");
  }
  return Trajectory(t_pred, obs.back());
}

Trajectory constant_velocity(const Trajectory & obs, std::size_t t_pred)
{
  if (obs.size() < 2) {
    throw DataError("constant-velocity baseline needs at least two observations");
  }
  const auto last = obs.back();
  const auto prev = obs[obs.size() - 2];
  const double vx = last.x - prev.x;
  const double vy = last.y - prev.y;
  Trajectory out(t_pred);
  for (std::size_t t = 0; t < t_pred; ++t) {
    const double n = static_cast<double>(t + 1);
    out[t] = {last.x + n * vx, last.y + n * vy};
  }
  return out;
}

}  // namespace nap::eval
