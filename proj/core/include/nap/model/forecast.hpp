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

#ifndef NAP__MODEL__FORECAST_HPP_
#define NAP__MODEL__FORECAST_HPP_

#include "nap/model/batch.hpp"
#include "nap/model/nap_model.hpp"
#include "nap/numeric/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nap::model
{

/// One latent draw (empty vectors when the variant has no latent path).
struct LatentDraw
{
  std::vector<double> mu;
  std::vector<double> sigma;
  std::vector<double> eps;
  std::vector<double> z;
};

/**
 * @brief K sampled futures for one pedestrian.
 *
 * `samples[k][j]` is the predicted position at prediction step `steps[j]`
 * (0-based) in the sample's normalized frame.
 */
struct ForecastSet
{
  std::string scene_id;
  std::int64_t ped_id = 0;
  std::vector<std::size_t> steps;
  std::vector<std::vector<dataio::Point2>> samples;
  std::vector<LatentDraw> latents;
  dataio::Point2 norm_offset;
  double norm_rotation = 0.0;

  std::size_t k() const noexcept { return samples.size(); }
  /// Sample k mapped back to world coordinates.
  std::vector<dataio::Point2> world_sample(std::size_t k) const;
};

/// 0, 1, ..., t_pred - 1.
std::vector<std::size_t> all_steps(const NapConfig & config);

/**
 * Forecasts K futures per sample. The encoders and context generators run
 * once; each of the K latent draws then decodes the requested steps, each
 * step independently of the others, in the order given.
 *
 * Sample 0 uses eps = 0 (z = mu); samples 1..K-1 draw eps from the sample's
 * own stream, so the K-set is a prefix of the (K+1)-set. `rngs` holds one
 * stream per sample.
 */
std::vector<ForecastSet> forecast_batch(std::span<const PreparedSample * const> samples, const NapModel & model,
                                        std::size_t k, std::span<numeric::Rng> rngs,
                                        std::span<const std::size_t> steps);

ForecastSet forecast(const PreparedSample & sample, const NapModel & model, std::size_t k, numeric::Rng & rng);
ForecastSet forecast(const PreparedSample & sample, const NapModel & model, std::size_t k, numeric::Rng & rng,
                     std::span<const std::size_t> steps);

}  // namespace nap::model

#endif  // NAP__MODEL__FORECAST_HPP_
