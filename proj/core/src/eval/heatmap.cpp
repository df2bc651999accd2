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

#include "nap/eval/heatmap.hpp"

#include "nap/dataio/records.hpp"
#include "nap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nap::eval
{

void HeatmapGeometry::validate() const
{
  if (height == 0 || width == 0 || !(cell_size > 0.0) || !std::isfinite(cell_size) || !std::isfinite(origin.x) ||
      !std::isfinite(origin.y)) {
    throw ConfigError("degenerate heatmap geometry");
  }
}

HeatmapGeometry centered_geometry(dataio::Point2 center, std::size_t height, std::size_t width, double cell_size)
{
  HeatmapGeometry g{height, width, cell_size,
                    {center.x - 0.5 * static_cast<double>(width) * cell_size,
                     center.y - 0.5 * static_cast<double>(height) * cell_size}};
  g.validate();
  return g;
}

double HeatmapGrid::total() const
{
  double sum = 0.0;
  for (double c : counts) {
    sum += c;
  }
  return sum;
}

std::string HeatmapGrid::format() const
{
  std::string out = std::to_string(geometry.height) + " " + std::to_string(geometry.width) + " " +
                    dataio::format_real(geometry.cell_size) + " " + dataio::format_real(geometry.origin.x) + " " +
                    dataio::format_real(geometry.origin.y) + " " + dataio::format_real(total()) + "\n";
  for (std::size_t r = 0; r < geometry.height; ++r) {
    for (std::size_t c = 0; c < geometry.width; ++c) {
      if (c > 0) {
        out += ' ';
      }
      out += dataio::format_real(at(r, c));
    }
    out += '\n';
  }
  return out;
}

HeatmapGrid heatmap(const model::ForecastSet & forecasts, const HeatmapGeometry & geometry)
{
  geometry.validate();
  if (forecasts.k() == 0) {
    throw ConfigError("heatmap needs at least one forecast sample");
  }
  HeatmapGrid grid{geometry, std::vector<double>(geometry.height * geometry.width, 0.0)};
  auto cell = [&](double v, double origin, std::size_t extent) {
    const double idx = std::floor((v - origin) / geometry.cell_size);
    if (!(idx >= 0.0)) {
      return std::size_t{0};
    }
    return std::min(extent - 1, static_cast<std::size_t>(std::min(idx, static_cast<double>(extent))));
  };
  for (std::size_t k = 0; k < forecasts.k(); ++k) {
    for (const auto & p : forecasts.world_sample(k)) {
      const std::size_t r = cell(p.y, geometry.origin.y, geometry.height);
      const std::size_t c = cell(p.x, geometry.origin.x, geometry.width);
      grid.counts[r * geometry.width + c] += 1.0;
    }
  }
  return grid;
}

}  // namespace nap::eval
