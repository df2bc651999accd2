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

#ifndef NAP__MODEL__NAP_MODEL_HPP_
#define NAP__MODEL__NAP_MODEL_HPP_

#include "nap/model/batch.hpp"
#include "nap/model/config.hpp"
#include "nap/numeric/graph.hpp"
#include "nap/numeric/layers.hpp"
#include "nap/numeric/param_store.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nap::model
{

using numeric::Graph;
using numeric::Var;

/// h (trajectory), g (social) and s (scene) features for a batch. g / s are
/// absent when the variant drops them; `state` is their concatenation.
struct EncodedState
{
  Var h;
  std::optional<Var> g;
  std::optional<Var> s;
  Var state;
};

/// Time-agnostic personal context and one time-specific context per
/// predicted step, all computed before any decoding.
struct ContextSet
{
  std::optional<Var> personal;
  std::vector<Var> steps;
};

struct LatentVars
{
  Var mu;
  Var log_variance;
  Var sigma;
  Var z;
};

/**
 * @brief The non-autoregressive predictor and its reference AR decoder.
 *
 * Owns the parameter store. All graph-building methods are const and only
 * read parameters, so one model can serve concurrent forecasts.
 */
class NapModel
{
public:
  /// Fresh model with uniform fan-in initialisation, rounded to float32.
  NapModel(NapConfig config, std::uint64_t init_seed);
  /// Model over existing parameters; throws IncompatibleError when names or
  /// shapes do not match the configuration.
  NapModel(NapConfig config, numeric::ParamStore params);

  const NapConfig & config() const noexcept { return config_; }
  numeric::ParamStore & params() noexcept { return params_; }
  const numeric::ParamStore & params() const noexcept { return params_; }

  Var encode_trajectory(Graph & graph, const Batch & batch) const;
  Var encode_social(Graph & graph, const Batch & batch) const;
  Var encode_scene(Graph & graph, const Batch & batch) const;
  EncodedState encode(Graph & graph, const Batch & batch) const;

  Var personal_context(Graph & graph, Var h) const;
  /// t_pred contexts of width d_c, in time order.
  std::vector<Var> interaction_contexts(Graph & graph, const EncodedState & state) const;
  ContextSet contexts(Graph & graph, const EncodedState & state) const;

  /// mu, sigma = exp(0.5 * logvar) and z = mu + sigma * eps for eps [B x d_z].
  LatentVars latent(Graph & graph, const EncodedState & state, Var eps) const;

  /// Position at prediction step `step` (0-based) from that step's context,
  /// the personal context and z. Independent of every other step.
  Var decode_step(Graph & graph, const ContextSet & contexts, std::size_t step, std::optional<Var> z) const;

  /// Reference autoregressive rollout: every step consumes the previous prediction.
  std::vector<Var> decode_autoregressive(Graph & graph, const EncodedState & state, std::optional<Var> z) const;

  /// Full forward pass to t_pred positions [B x 2]. `eps` is required when
  /// the latent path is used (pass zeros for the deterministic mode).
  std::vector<Var> predict(Graph & graph, const Batch & batch, std::optional<Var> eps) const;

  /// Parameter names the configuration requires, with their shapes.
  static std::vector<std::pair<std::string, numeric::Shape>> parameter_layout(const NapConfig & config);

private:
  numeric::LinearWeights linear_weights(Graph & graph, const std::string & prefix) const;
  numeric::LstmWeights lstm_weights(Graph & graph, const std::string & prefix) const;
  std::vector<Var> run_lstm(Graph & graph, const std::vector<Var> & inputs, const numeric::LstmWeights & w,
                            std::size_t hidden) const;

  NapConfig config_;
  numeric::ParamStore params_;
};

}  // namespace nap::model

#endif  // NAP__MODEL__NAP_MODEL_HPP_
