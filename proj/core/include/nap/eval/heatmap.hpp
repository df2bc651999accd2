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

#ifndef NAP__EVAL__HEATMAP_HPP_
#define NAP__EVAL__HEATMAP_HPP_

#include "nap/dataio/samples.hpp"
#include "nap/model/forecast.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace nap::eval
{

struct HeatmapGeometry
{
  std::size_t height = 0;
  std::size_t width = 0;
  double cell_size = 0.0;
  /// World coordinates of the lower corner of cell (0, 0).
  dataio::Point2 origin;

  /// Throws ConfigError for zero extents or a non-positive cell size.
  void validate() const;
};

/// height x width cells of `cell_size` centred on `center`.
HeatmapGeometry centered_geometry(dataio::Point2 center, std::size_t height, std::size_t width, double cell_size);

/// Row-major counts; row r covers y in [origin.y + r*cs, origin.y + (r+1)*cs).
struct HeatmapGrid
{
  HeatmapGeometry geometry;
  std::vector<double> counts;

  double total() const;
  double at(std::size_t row, std::size_t col) const { return counts[row * geometry.width + col]; }
  /// Header "H W cell_size origin_x origin_y total" then one row per line.
  std::string format() const;
};

/// Bins every world-space predicted point of every sample. Points outside
/// the geometry are clamped to the nearest border cell, so the total count is
/// exactly K x steps.
HeatmapGrid heatmap(const model::ForecastSet & forecasts, const HeatmapGeometry & geometry);

}  // namespace nap::eval

#endif  // NAP__EVAL__HEATMAP_HPP_
