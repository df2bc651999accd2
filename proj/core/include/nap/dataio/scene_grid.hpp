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

#ifndef NAP__DATAIO__SCENE_GRID_HPP_
#define NAP__DATAIO__SCENE_GRID_HPP_

#include "nap/dataio/samples.hpp"
#include "nap/numeric/tensor.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nap::dataio
{

/**
 * @brief Rasterised static scene: channel 0 is obstacle probability.
 *
 * Cell (r, c) covers world x in [origin_x + c*cell_size, origin_x + (c+1)*cell_size)
 * and y in [origin_y + r*cell_size, ...). Data is C x H x W row-major, values in [0, 1].
 */
struct SceneGrid
{
  std::string scene_id;
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 1;
  double cell_size = 1.0;
  Point2 origin;
  std::vector<double> data;

  double & at(std::size_t channel, std::size_t row, std::size_t col)
  {
    return data[(channel * height + row) * width + col];
  }
  double at(std::size_t channel, std::size_t row, std::size_t col) const
  {
    return data[(channel * height + row) * width + col];
  }

  /// Throws DataError when dimensions, cell size or data length are invalid.
  void validate() const;
};

/// Header "H W C cell_size origin_x origin_y", then C*H lines of W reals.
SceneGrid parse_scene_grid_text(std::string_view text, std::string_view source_name, std::string scene_id = {});
SceneGrid parse_scene_grid(const std::filesystem::path & path, std::string scene_id = {});
std::string format_scene_grid(const SceneGrid & grid);
void write_scene_grid(const std::filesystem::path & path, const SceneGrid & grid);

/**
 * Fixed-size [C x out_h x out_w] crop centred at `center`. Crop cell (r, c)
 * samples the grid cell containing center + ((c - (out_w-1)/2), (r - (out_h-1)/2)) * cell_size.
 * Cells outside the grid read 1.0 (obstacle).
 */
numeric::Tensor crop_scene(const SceneGrid & grid, Point2 center, std::size_t out_h, std::size_t out_w);

}  // namespace nap::dataio

#endif  // NAP__DATAIO__SCENE_GRID_HPP_
