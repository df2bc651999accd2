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

#include "nap/dataio/scene_grid.hpp"

#include "nap/dataio/records.hpp"
#include "nap/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nap::dataio
{

void SceneGrid::validate() const
{
  if (height == 0 || width == 0 || channels == 0) {
    throw DataError("scene grid '" + scene_id + "' has a zero dimension");
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw DataError("scene grid '" + scene_id + "' has non-positive cell size");
  }
  if (data.size() != channels * height * width) {
    throw DataError("scene grid '" + scene_id + "' data length " + std::to_string(data.size()) +
                    " != C*H*W = " + std::to_string(channels * height * width));
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw DataError("scene grid '" + scene_id + "' has a non-finite origin");
  }
}

SceneGrid parse_scene_grid_text(std::string_view text, std::string_view source_name, std::string scene_id)
{
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '#') {
      in_comment = true;
    } else if (ch == '\n') {
      in_comment = false;
    }
    cleaned.push_back(in_comment ? ' ' : ch);
  }
  std::istringstream in(cleaned);
  SceneGrid grid;
  grid.scene_id = std::move(scene_id);
  if (!(in >> grid.height >> grid.width >> grid.channels >> grid.cell_size >> grid.origin.x >> grid.origin.y)) {
    throw DataError(std::string(source_name) + ": malformed scene-grid header");
  }
  const std::size_t expected = grid.height * grid.width * grid.channels;
  grid.data.reserve(expected);
  std::string token;
  while (in >> token) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(token, &used);
      if (used != token.size()) {
        throw std::invalid_argument(token);
      }
    } catch (const std::exception &) {
      throw DataError(std::string(source_name) + ": invalid grid value '" + token + "'");
    }
    if (!std::isfinite(v)) {
      throw DataError(std::string(source_name) + ": non-finite grid value");
    }
    grid.data.push_back(v);
  }
  grid.validate();
  return grid;
}

SceneGrid parse_scene_grid(const std::filesystem::path & path, std::string scene_id)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read scene grid '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scene_grid_text(buffer.str(), path.string(), std::move(scene_id));
}

std::string format_scene_grid(const SceneGrid & grid)
{
  grid.validate();
  std::string out = std::to_string(grid.height) + ' ' + std::to_string(grid.width) + ' ' +
                    std::to_string(grid.channels) + ' ' + format_real(grid.cell_size) + ' ' +
                    format_real(grid.origin.x) + ' ' + format_real(grid.origin.y) + '\n';
  for (std::size_t ch = 0; ch < grid.channels; ++ch) {
    for (std::size_t r = 0; r < grid.height; ++r) {
      for (std::size_t c = 0; c < grid.width; ++c) {
        if (c) {
          out += ' ';
        }
        out += format_real(grid.at(ch, r, c));
      }
      out += '\n';
    }
  }
  return out;
}

void write_scene_grid(const std::filesystem::path & path, const SceneGrid & grid)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write scene grid '" + path.string() + "'");
  }
  out << format_scene_grid(grid);
}

numeric::Tensor crop_scene(const SceneGrid & grid, Point2 center, std::size_t out_h, std::size_t out_w)
{
  grid.validate();
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw DataError("crop centre is not finite");
  }
  if (out_h == 0 || out_w == 0) {
    throw DataError("crop size must be positive");
  }
  numeric::Tensor crop({grid.channels, out_h, out_w});
  const double half_h = 0.5 * static_cast<double>(out_h - 1);
  const double half_w = 0.5 * static_cast<double>(out_w - 1);
  for (std::size_t r = 0; r < out_h; ++r) {
    const double wy = center.y + (static_cast<double>(r) - half_h) * grid.cell_size;
    const double gr = std::floor((wy - grid.origin.y) / grid.cell_size);
    for (std::size_t c = 0; c < out_w; ++c) {
      const double wx = center.x + (static_cast<double>(c) - half_w) * grid.cell_size;
      const double gc = std::floor((wx - grid.origin.x) / grid.cell_size);
      const bool inside =
        gr >= 0 && gc >= 0 && gr < static_cast<double>(grid.height) && gc < static_cast<double>(grid.width);
      for (std::size_t ch = 0; ch < grid.channels; ++ch) {
        crop[(ch * out_h + r) * out_w + c] =
          inside ? grid.at(ch, static_cast<std::size_t>(gr), static_cast<std::size_t>(gc)) : 1.0;
      }
    }
  }
  return crop;
}

}  // namespace nap::dataio
