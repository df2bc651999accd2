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

#include "nap/model/forecast.hpp"

#include "nap/errors.hpp"

namespace nap::model
{
using numeric::Tensor;

std::vector<dataio::Point2> ForecastSet::world_sample(std::size_t k) const
{
  dataio::SequenceSample frame;
  frame.norm_offset = norm_offset;
  frame.norm_rotation = norm_rotation;
  frame.normalized = true;
  std::vector<dataio::Point2> out;
  for (const auto & p : samples.at(k)) {
    out.push_back(dataio::to_world(frame, p));
  }
  return out;
}

std::vector<std::size_t> all_steps(const NapConfig & config)
{
  std::vector<std::size_t> steps(config.t_pred);
  for (std::size_t t = 0; t < steps.size(); ++t) {
    steps[t] = t;
  }
  return steps;
}

namespace
{
std::vector<double> row_of(const Tensor & t, std::size_t row)
{
  const std::size_t cols = t.dim(1);
  return {t.values().begin() + static_cast<std::ptrdiff_t>(row * cols),
          t.values().begin() + static_cast<std::ptrdiff_t>((row + 1) * cols)};
}
}  // namespace

std::vector<ForecastSet> forecast_batch(std::span<const PreparedSample * const> samples, const NapModel & model,
                                        std::size_t k, std::span<numeric::Rng> rngs,
                                        std::span<const std::size_t> steps)
{
  const NapConfig & cfg = model.config();
  if (k == 0) {
    throw ConfigError("forecast needs K >= 1");
  }
  if (rngs.size() != samples.size()) {
    throw ConfigError("forecast_batch: one random stream per sample required");
  }
  for (std::size_t step : steps) {
    if (step >= cfg.t_pred) {
      throw ConfigError("requested step " + std::to_string(step + 1) + " exceeds t_pred = " +
                        std::to_string(cfg.t_pred));
    }
  }
  const Batch batch = make_batch(samples, cfg);
  const std::size_t b = batch.size;

  std::vector<ForecastSet> out(b);
  for (std::size_t i = 0; i < b; ++i) {
    const auto & s = samples[i]->sample;
    out[i].scene_id = s.scene_id;
    out[i].ped_id = s.ped_id;
    out[i].steps.assign(steps.begin(), steps.end());
    out[i].norm_offset = s.norm_offset;
    out[i].norm_rotation = s.norm_rotation;
    out[i].samples.assign(k, std::vector<dataio::Point2>(steps.size()));
    out[i].latents.resize(k);
  }

  Graph graph(false);
  const EncodedState state = model.encode(graph, batch);
  const bool autoregressive = cfg.decoder == DecoderKind::kAutoregressive;
  ContextSet contexts;
  if (!autoregressive) {
    contexts = model.contexts(graph, state);
  }

  for (std::size_t draw = 0; draw < k; ++draw) {
    std::optional<Var> z;
    if (cfg.uses_latent()) {
      Tensor eps({b, cfg.d_z});
      if (draw > 0) {
        for (std::size_t i = 0; i < b; ++i) {
          for (std::size_t j = 0; j < cfg.d_z; ++j) {
            eps.at(i, j) = rngs[i].normal();
          }
        }
      }
      const LatentVars lv = model.latent(graph, state, graph.constant(eps));
      z = lv.z;
      for (std::size_t i = 0; i < b; ++i) {
        out[i].latents[draw] = {row_of(lv.mu.value(), i), row_of(lv.sigma.value(), i), row_of(eps, i),
                                row_of(lv.z.value(), i)};
      }
    }
    std::vector<Var> positions(steps.size());
    if (autoregressive) {
      const std::vector<Var> rollout = model.decode_autoregressive(graph, state, z);
      for (std::size_t j = 0; j < steps.size(); ++j) {
        positions[j] = rollout[steps[j]];
      }
    } else {
      for (std::size_t j = 0; j < steps.size(); ++j) {
        positions[j] = model.decode_step(graph, contexts, steps[j], z);
      }
    }
    for (std::size_t j = 0; j < steps.size(); ++j) {
      const Tensor & p = positions[j].value();
      for (std::size_t i = 0; i < b; ++i) {
        out[i].samples[draw][j] = {p.at(i, 0), p.at(i, 1)};
      }
    }
  }
  return out;
}

ForecastSet forecast(const PreparedSample & sample, const NapModel & model, std::size_t k, numeric::Rng & rng,
                     std::span<const std::size_t> steps)
{
  const PreparedSample * ptr = &sample;
  return forecast_batch(std::span<const PreparedSample * const>(&ptr, 1), model, k, std::span<numeric::Rng>(&rng, 1),
                        steps)
    .front();
}

ForecastSet forecast(const PreparedSample & sample, const NapModel & model, std::size_t k, numeric::Rng & rng)
{
  const auto steps = all_steps(model.config());
  return forecast(sample, model, k, rng, steps);
}

}  // namespace nap::model
