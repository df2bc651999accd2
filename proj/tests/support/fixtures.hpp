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

#ifndef NAP_TEST__FIXTURES_HPP_
#define NAP_TEST__FIXTURES_HPP_

#include "nap/dataio/synth.hpp"
#include "nap/model/batch.hpp"
#include "nap/model/config.hpp"
#include "nap/numeric/param_store.hpp"
#include "nap/numeric/random.hpp"
#include "nap/numeric/tensor.hpp"

#include <cmath>
#include <vector>

namespace nap::test
{

inline numeric::Tensor random_tensor(numeric::Shape shape, numeric::Rng & rng, double scale = 1.0)
{
  numeric::Tensor t(std::move(shape));
  for (auto & v : t.data()) {
    v = rng.uniform(-scale, scale);
  }
  return t;
}

/// Gives every parameter a random value. Zero-initialised biases put ReLU
/// units exactly on their kink, where finite differences are meaningless.
inline void randomize_params(numeric::ParamStore & store, numeric::Rng & rng, double scale = 0.5)
{
  for (auto & p : store) {
    for (auto & v : p.value.data()) {
      v = rng.uniform(-scale, scale);
    }
  }
}

/// Small dimensions for gradient checks and fast property tests.
inline model::NapConfig tiny_config()
{
  model::NapConfig c;
  c.d_emb = 3;
  c.d_h = 4;
  c.d_a = 3;
  c.d_g = 3;
  c.d_s = 3;
  c.d_c = 3;
  c.d_p = 3;
  c.d_z = 2;
  c.t_obs = 4;
  c.t_pred = 3;
  c.icg_hidden = 5;
  c.crop_size = 6;
  return c;
}

/// A raw sample with a curved track, a few neighbours and a random future.
inline dataio::SequenceSample random_sample(const model::NapConfig & cfg, numeric::Rng & rng,
                                            std::size_t neighbors = 3)
{
  dataio::SequenceSample s;
  s.scene_id = "fixture";
  s.ped_id = static_cast<std::int64_t>(rng.below(1000));
  dataio::Point2 p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
  const double vx = rng.uniform(-1, 1), vy = rng.uniform(-1, 1);
  for (std::size_t t = 0; t < cfg.t_obs + cfg.t_pred; ++t) {
    p = {p.x + vx + 0.1 * rng.normal(), p.y + vy + 0.1 * rng.normal()};
    (t < cfg.t_obs ? s.obs : s.fut).push_back(p);
  }
  for (std::size_t t = 0; t < cfg.t_obs; ++t) {
    std::vector<dataio::Point2> nb;
    for (std::size_t j = 0; j < neighbors; ++j) {
      nb.push_back({s.obs[t].x + rng.uniform(-3, 3), s.obs[t].y + rng.uniform(-3, 3)});
    }
    s.neighbors.push_back(nb);
  }
  return s;
}

inline model::PreparedSample random_prepared(const model::NapConfig & cfg, numeric::Rng & rng,
                                             std::size_t neighbors = 3)
{
  model::PreparedSample ps;
  ps.sample = dataio::normalize(random_sample(cfg, rng, neighbors));
  ps.crop = numeric::Tensor({cfg.scene_channels, cfg.crop_size, cfg.crop_size});
  for (auto & v : ps.crop.data()) {
    v = rng.uniform() < 0.3 ? 1.0 : 0.0;
  }
  return ps;
}

}  // namespace nap::test

#endif  // NAP_TEST__FIXTURES_HPP_
