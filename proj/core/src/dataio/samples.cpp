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

#include "nap/dataio/samples.hpp"

#include "nap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace nap::dataio
{

Point2 rotate(Point2 p, double angle)
{
  if (angle == 0.0) {
    return p;
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

double distance(Point2 a, Point2 b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::int64_t infer_frame_interval(const std::vector<FrameRecord> & records)
{
  std::int64_t best = 0;
  std::int64_t previous = 0;
  bool have_previous = false;
  for (const auto & r : records) {
    if (have_previous && r.frame_id != previous) {
      const std::int64_t gap = r.frame_id - previous;
      if (gap > 0 && (best == 0 || gap < best)) {
        best = gap;
      }
    }
    previous = r.frame_id;
    have_previous = true;
  }
  return best == 0 ? 1 : best;
}

std::vector<SequenceSample> window_samples(const std::vector<FrameRecord> & records, const WindowOptions & options,
                                           const std::string & scene_id)
{
  if (options.t_obs == 0 || options.t_pred == 0 || options.stride == 0) {
    throw ConfigError("window lengths and stride must be positive");
  }
  const std::int64_t interval = options.frame_interval > 0 ? options.frame_interval : infer_frame_interval(records);
  const std::size_t span = options.t_obs + options.t_pred;

  // frame -> (ped -> position), pedestrians in ascending id order.
  std::map<std::int64_t, std::map<std::int64_t, Point2>> frames;
  std::map<std::int64_t, std::vector<std::int64_t>> ped_frames;
  for (const auto & r : records) {
    frames[r.frame_id][r.ped_id] = Point2{r.x, r.y};
    ped_frames[r.ped_id].push_back(r.frame_id);
  }

  std::vector<SequenceSample> samples;
  for (auto & [ped, frame_list] : ped_frames) {
    std::sort(frame_list.begin(), frame_list.end());
    const std::int64_t first = frame_list.front();
    for (std::int64_t start : frame_list) {
      if (((start - first) / interval) % static_cast<std::int64_t>(options.stride) != 0 ||
          (start - first) % interval != 0) {
        continue;
      }
      bool present = true;
      for (std::size_t k = 0; k < span && present; ++k) {
        auto it = frames.find(start + static_cast<std::int64_t>(k) * interval);
        present = it != frames.end() && it->second.count(ped);
      }
      if (!present) {
        continue;
      }
      SequenceSample s;
      s.scene_id = scene_id;
      s.ped_id = ped;
      s.start_frame = start;
      for (std::size_t k = 0; k < span; ++k) {
        const auto & frame = frames.at(start + static_cast<std::int64_t>(k) * interval);
        const Point2 self = frame.at(ped);
        if (k < options.t_obs) {
          s.obs.push_back(self);
          std::vector<std::pair<double, std::pair<std::int64_t, Point2>>> others;
          for (const auto & [other_id, pos] : frame) {
            if (other_id != ped) {
              others.push_back({distance(self, pos), {other_id, pos}});
            }
          }
          std::sort(others.begin(), others.end(), [](const auto & a, const auto & b) {
            return std::pair(a.first, a.second.first) < std::pair(b.first, b.second.first);
          });
          if (others.size() > options.max_neighbors) {
            others.resize(options.max_neighbors);
          }
          std::vector<Point2> step;
          for (const auto & o : others) {
            step.push_back(o.second.second);
          }
          s.neighbors.push_back(std::move(step));
        } else {
          s.fut.push_back(self);
        }
      }
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

Point2 to_normalized(const SequenceSample & sample, Point2 p)
{
  return rotate(Point2{p.x - sample.norm_offset.x, p.y - sample.norm_offset.y}, sample.norm_rotation);
}

Point2 to_world(const SequenceSample & sample, Point2 p)
{
  const Point2 r = rotate(p, -sample.norm_rotation);
  return {r.x + sample.norm_offset.x, r.y + sample.norm_offset.y};
}

namespace
{
template <typename Fn>
void transform_points(SequenceSample & s, Fn fn)
{
  for (auto & p : s.obs) {
    p = fn(p);
  }
  for (auto & p : s.fut) {
    p = fn(p);
  }
  for (auto & step : s.neighbors) {
    for (auto & p : step) {
      p = fn(p);
    }
  }
}
}  // namespace

SequenceSample normalize(SequenceSample sample)
{
  if (sample.normalized) {
    throw DataError("sample is already normalized");
  }
  if (sample.obs.empty()) {
    throw DataError("cannot normalize a sample without observations");
  }
  sample.norm_offset = sample.obs.back();
  sample.norm_rotation = 0.0;
  const Point2 offset = sample.norm_offset;
  transform_points(sample, [offset](Point2 p) { return Point2{p.x - offset.x, p.y - offset.y}; });
  sample.normalized = true;
  return sample;
}

SequenceSample denormalize(SequenceSample sample)
{
  if (!sample.normalized) {
    return sample;
  }
  const SequenceSample frame = sample;
  transform_points(sample, [&frame](Point2 p) { return to_world(frame, p); });
  sample.norm_offset = {};
  sample.norm_rotation = 0.0;
  sample.normalized = false;
  return sample;
}

numeric::Tensor rotate_crop(const numeric::Tensor & crop, double angle)
{
  if (crop.rank() != 3) {
    throw ShapeError("rotate_crop expects a [C x H x W] crop");
  }
  if (angle == 0.0) {
    return crop;
  }
  const std::size_t channels = crop.dim(0), height = crop.dim(1), width = crop.dim(2);
  const double cy = 0.5 * static_cast<double>(height - 1);
  const double cx = 0.5 * static_cast<double>(width - 1);
  numeric::Tensor out(crop.shape());
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      // Destination cell centre, pulled back through the inverse rotation.
      const Point2 src = rotate(Point2{static_cast<double>(c) - cx, static_cast<double>(r) - cy}, -angle);
      const double sc = std::nearbyint(src.x + cx);
      const double sr = std::nearbyint(src.y + cy);
      const bool inside = sc >= 0 && sr >= 0 && sc < static_cast<double>(width) && sr < static_cast<double>(height);
      for (std::size_t ch = 0; ch < channels; ++ch) {
        out[(ch * height + r) * width + c] =
          inside ? crop[(ch * height + static_cast<std::size_t>(sr)) * width + static_cast<std::size_t>(sc)] : 1.0;
      }
    }
  }
  return out;
}

std::pair<SequenceSample, numeric::Tensor> rotate_augment(SequenceSample sample, const numeric::Tensor & crop,
                                                          double angle)
{
  if (!sample.normalized) {
    throw DataError("rotate_augment expects a normalized sample");
  }
  if (angle != 0.0) {
    transform_points(sample, [angle](Point2 p) { return rotate(p, angle); });
    sample.norm_rotation += angle;
  }
  return {std::move(sample), rotate_crop(crop, angle)};
}

}  // namespace nap::dataio
