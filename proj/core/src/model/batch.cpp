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

#include "nap/model/batch.hpp"

#include "nap/errors.hpp"

#include <algorithm>

namespace nap::model
{

PreparedSample prepare_sample(const dataio::SequenceSample & raw, const dataio::SceneGrid & grid,
                              const NapConfig & config)
{
  if (raw.obs.size() != config.t_obs) {
    throw DataError("sample has " + std::to_string(raw.obs.size()) + " observed steps, model expects " +
                    std::to_string(config.t_obs));
  }
  if (grid.channels != config.scene_channels) {
    throw IncompatibleError("scene grid has " + std::to_string(grid.channels) + " channels, model expects " +
                            std::to_string(config.scene_channels));
  }
  PreparedSample out;
  out.crop = dataio::crop_scene(grid, raw.obs.back(), config.crop_size, config.crop_size);
  out.sample = raw.normalized ? raw : dataio::normalize(raw);
  return out;
}

dataio::Point2 neighbor_mean(const std::vector<dataio::Point2> & neighbors)
{
  if (neighbors.empty()) {
    return {};
  }
  dataio::Point2 sum;
  for (const auto & p : neighbors) {
    sum.x += p.x;
    sum.y += p.y;
  }
  const double n = static_cast<double>(neighbors.size());
  return {sum.x / n, sum.y / n};
}

Batch make_batch(std::span<const PreparedSample * const> samples, const NapConfig & config)
{
  if (samples.empty()) {
    throw DataError("cannot build an empty batch");
  }
  Batch batch;
  batch.size = samples.size();
  const std::size_t b = samples.size();
  const std::size_t s = config.crop_size;
  const std::size_t c = config.scene_channels;
  batch.obs.assign(config.t_obs, numeric::Tensor({b, 2}));
  batch.neighbor_mean.assign(config.t_obs, numeric::Tensor({b, 2}));
  batch.crops = numeric::Tensor({b, c, s, s});
  bool have_future = true;
  for (const auto * ps : samples) {
    have_future = have_future && ps->sample.fut.size() == config.t_pred;
  }
  if (have_future) {
    batch.future.assign(config.t_pred, numeric::Tensor({b, 2}));
  }
  for (std::size_t i = 0; i < b; ++i) {
    const PreparedSample & ps = *samples[i];
    if (!ps.sample.normalized) {
      throw DataError("batch samples must be normalized");
    }
    if (ps.sample.obs.size() != config.t_obs || ps.sample.neighbors.size() != config.t_obs) {
      throw DataError("sample observation length does not match t_obs = " + std::to_string(config.t_obs));
    }
    if (ps.crop.shape() != numeric::Shape{c, s, s}) {
      throw ShapeError("scene crop " + numeric::shape_string(ps.crop.shape()) + " does not match crop_size " +
                       std::to_string(s));
    }
    for (std::size_t t = 0; t < config.t_obs; ++t) {
      batch.obs[t].at(i, 0) = ps.sample.obs[t].x;
      batch.obs[t].at(i, 1) = ps.sample.obs[t].y;
      const auto mean = neighbor_mean(ps.sample.neighbors[t]);
      batch.neighbor_mean[t].at(i, 0) = mean.x;
      batch.neighbor_mean[t].at(i, 1) = mean.y;
    }
    if (have_future) {
      for (std::size_t t = 0; t < config.t_pred; ++t) {
        batch.future[t].at(i, 0) = ps.sample.fut[t].x;
        batch.future[t].at(i, 1) = ps.sample.fut[t].y;
      }
    }
    std::copy(ps.crop.data().begin(), ps.crop.data().end(), batch.crops.data().begin() + i * c * s * s);
  }
  return batch;
}

Batch make_batch(const PreparedSample & sample, const NapConfig & config)
{
  const PreparedSample * ptr = &sample;
  return make_batch(std::span<const PreparedSample * const>(&ptr, 1), config);
}

}  // namespace nap::model
