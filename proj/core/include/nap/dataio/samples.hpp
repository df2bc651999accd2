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

#ifndef NAP__DATAIO__SAMPLES_HPP_
#define NAP__DATAIO__SAMPLES_HPP_

#include "nap/dataio/records.hpp"
#include "nap/numeric/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nap::dataio
{

struct Point2
{
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2 &) const = default;
};

Point2 rotate(Point2 p, double angle);
double distance(Point2 a, Point2 b);

/**
 * @brief One pedestrian's observation/future window.
 *
 * `neighbors[t]` holds the positions of the other pedestrians present at
 * observed step t. After normalize(), coordinates live in a frame whose
 * origin is the last observed position, rotated by `norm_rotation`:
 * p_norm = R(norm_rotation) (p_world - norm_offset).
 */
struct SequenceSample
{
  std::string scene_id;
  std::int64_t ped_id = 0;
  std::int64_t start_frame = 0;
  std::vector<Point2> obs;
  std::vector<Point2> fut;
  std::vector<std::vector<Point2>> neighbors;
  Point2 norm_offset;
  double norm_rotation = 0.0;
  bool normalized = false;

  bool operator==(const SequenceSample &) const = default;
};

struct WindowOptions
{
  std::size_t t_obs = 8;
  std::size_t t_pred = 12;
  /// Shift between consecutive window starts, in time steps.
  std::size_t stride = 1;
  /// Frame-id step between consecutive time steps; 0 infers the smallest
  /// positive gap between distinct frame ids.
  std::int64_t frame_interval = 0;
  /// Keep at most this many nearest neighbours per observed step.
  std::size_t max_neighbors = 16;
};

/// Smallest positive gap between distinct frame ids (1 if fewer than two frames).
std::int64_t infer_frame_interval(const std::vector<FrameRecord> & records);

/**
 * One sample per pedestrian and admissible window: the pedestrian is present
 * in t_obs + t_pred consecutive time steps. Window starts advance by
 * `stride` steps from the pedestrian's first frame. Records must be sorted by
 * (frame, ped). Samples are ordered by (ped, start frame).
 */
std::vector<SequenceSample> window_samples(const std::vector<FrameRecord> & records, const WindowOptions & options,
                                           const std::string & scene_id = {});

/// Translates so the last observed position becomes the origin.
SequenceSample normalize(SequenceSample sample);
/// Inverse of normalize (and of any applied rotation).
SequenceSample denormalize(SequenceSample sample);
/// Maps a point from the sample's normalized frame back to world coordinates.
Point2 to_world(const SequenceSample & sample, Point2 p);
/// Maps a world point into the sample's normalized frame.
Point2 to_normalized(const SequenceSample & sample, Point2 p);

/**
 * Rotates every trajectory coordinate of a normalized sample about the origin
 * and resamples the pedestrian-centred crop [C x H x W] under the same
 * rotation (nearest neighbour, cells outside the source filled with 1.0).
 */
std::pair<SequenceSample, numeric::Tensor> rotate_augment(SequenceSample sample, const numeric::Tensor & crop,
                                                          double angle);

/// Nearest-neighbour rotation of a centred crop about its centre.
numeric::Tensor rotate_crop(const numeric::Tensor & crop, double angle);

}  // namespace nap::dataio

#endif  // NAP__DATAIO__SAMPLES_HPP_
