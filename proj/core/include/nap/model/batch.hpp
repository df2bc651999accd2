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

#ifndef NAP__MODEL__BATCH_HPP_
#define NAP__MODEL__BATCH_HPP_

#include "nap/dataio/samples.hpp"
#include "nap/dataio/scene_grid.hpp"
#include "nap/model/config.hpp"
#include "nap/numeric/tensor.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nap::model
{

/// A normalized sample with its pedestrian-centred scene crop [C x S x S].
struct PreparedSample
{
  dataio::SequenceSample sample;
  numeric::Tensor crop;
};

/// Normalizes `raw` and crops the scene around its last observed position.
PreparedSample prepare_sample(const dataio::SequenceSample & raw, const dataio::SceneGrid & grid,
                              const NapConfig & config);

/// Mean of the neighbour positions (zero vector when there are none).
dataio::Point2 neighbor_mean(const std::vector<dataio::Point2> & neighbors);

/// Network inputs for B samples, one [B x 2] tensor per time step.
struct Batch
{
  std::size_t size = 0;
  std::vector<numeric::Tensor> obs;
  std::vector<numeric::Tensor> neighbor_mean;
  numeric::Tensor crops;  // [B x C x S x S]
  /// Ground truth, present when every sample has t_pred future steps.
  std::vector<numeric::Tensor> future;
};

Batch make_batch(std::span<const PreparedSample * const> samples, const NapConfig & config);
Batch make_batch(const PreparedSample & sample, const NapConfig & config);

}  // namespace nap::model

#endif  // NAP__MODEL__BATCH_HPP_
