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

#ifndef NAP__TRAIN__TRAINER_HPP_
#define NAP__TRAIN__TRAINER_HPP_

#include "nap/config_text.hpp"
#include "nap/dataio/split.hpp"
#include "nap/model/batch.hpp"
#include "nap/model/nap_model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nap::train
{

struct TrainConfig
{
  double lr = 1e-3;
  std::size_t batch_size = 128;
  std::size_t epochs = 20;
  std::uint64_t seed = 0;
  /// Samples per pedestrian for the variety loss (multimodal runs only).
  std::size_t k_variety = 20;
  double kl_weight = 0.0;
  double clip_norm = 10.0;
  /// Random rotations by multiples of 15 degrees.
  bool augment = true;
  /// Worker threads; results do not depend on this value.
  std::size_t threads = 1;
  /// Samples per gradient chunk; chunks are reduced in order.
  std::size_t chunk_size = 32;

  void validate() const;
  KeyValues to_key_values() const;
  bool apply(std::string_view key, std::string_view value);
};

struct EpochLog
{
  std::size_t epoch = 0;
  double loss = 0.0;
  /// Mean pre-clip global gradient norm over the epoch's batches.
  double grad_norm = 0.0;
  double seconds = 0.0;
};

struct TrainLog
{
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string data_hash;
  std::vector<EpochLog> epochs;

  /// "# seed=.. config=.. data=.." header then "epoch loss grad_norm seconds" lines.
  std::string format() const;
};

/// Windowed, normalized samples of one scene with their crops.
std::vector<model::PreparedSample> prepare_scene(const dataio::SceneData & scene, const model::NapConfig & config,
                                                 std::size_t stride = 1);

/// Order-sensitive hash of sample coordinates and crops.
std::string dataset_hash(const std::vector<model::PreparedSample> & samples);

/**
 * Loss of one mini-batch chunk, scaled by 1 / `normalizer`. `stream_keys`
 * seeds each sample's latent noise. Returns the loss variable on `graph`.
 */
numeric::Var batch_loss(numeric::Graph & graph, const model::NapModel & model, const model::Batch & batch,
                        const TrainConfig & config, std::span<const std::uint64_t> stream_seeds,
                        double normalizer);

/**
 * One epoch: seeded shuffle, optional rotation augmentation, forward and
 * backward in fixed chunks, global-norm clipping and an Adam step per batch.
 * Every sample's scene is re-checked against `plan`; a test-scene sample
 * raises DataError. A non-finite loss raises NumericError.
 */
EpochLog train_epoch(model::NapModel & model, const std::vector<model::PreparedSample> & data,
                     const dataio::SplitPlan & plan, const TrainConfig & config, std::size_t epoch);

/// Runs config.epochs epochs, calling `on_epoch` after each.
TrainLog train(model::NapModel & model, const std::vector<model::PreparedSample> & data,
               const dataio::SplitPlan & plan, const TrainConfig & config,
               const std::function<void(const EpochLog &)> & on_epoch = {});

}  // namespace nap::train

#endif  // NAP__TRAIN__TRAINER_HPP_
