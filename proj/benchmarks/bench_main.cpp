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

#include "fixtures.hpp"
#include "nap/eval/metrics.hpp"
#include "nap/model/batch.hpp"
#include "nap/model/forecast.hpp"
#include "nap/model/nap_model.hpp"
#include "nap/numeric/layers.hpp"
#include "nap/numeric/ops.hpp"
#include "nap/train/trainer.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace
{
using namespace nap;
using numeric::Rng;

std::vector<model::PreparedSample> samples(const model::NapConfig & cfg, std::size_t n, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<model::PreparedSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(test::random_prepared(cfg, rng, 4));
  }
  return out;
}

/// LSTM unroll of 8 steps at the trajectory encoder's width, forward and backward.
void BM_LstmForwardBackward(benchmark::State & state)
{
  const std::size_t batch = static_cast<std::size_t>(state.range(0)), d = 32, n = 16;
  Rng rng(1);
  numeric::ParamStore store;
  store.add("wi", test::random_tensor({4 * d, n}, rng, 0.2));
  store.add("wh", test::random_tensor({4 * d, d}, rng, 0.2));
  store.add("b", test::random_tensor({4 * d}, rng, 0.1));
  const numeric::Tensor x = test::random_tensor({batch, n}, rng);
  for (auto _ : state) {
    numeric::Graph g;
    const numeric::LstmWeights w{g.parameter(store, "wi"), g.parameter(store, "wh"), g.parameter(store, "b")};
    auto s = numeric::lstm_zero_state(g, batch, d);
    for (int t = 0; t < 8; ++t) {
      s = numeric::lstm_cell(s, g.constant(x), w);
    }
    g.backward(numeric::ops::sum_all(s.hidden));
    benchmark::DoNotOptimize(g.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch));
}
BENCHMARK(BM_LstmForwardBackward)->Arg(1)->Arg(32)->Arg(128);

/// K-sample forecast of one pedestrian with the default dimensions.
void BM_Forecast(benchmark::State & state)
{
  model::NapConfig cfg;
  cfg.multimodal = state.range(0) > 1;
  const model::NapModel m(cfg, 1);
  const auto data = samples(cfg, 1, 2);
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(model::forecast(data[0], m, k, rng));
  }
}
BENCHMARK(BM_Forecast)->Arg(1)->Arg(20);

/// One training epoch over 128 samples (a single Adam step at batch 128).
void BM_TrainEpoch(benchmark::State & state)
{
  model::NapConfig cfg;
  model::NapModel m(cfg, 1);
  const auto data = samples(cfg, 128, 4);
  const dataio::SplitPlan plan{{"fixture"}, "held-out"};
  train::TrainConfig tc;
  tc.threads = static_cast<std::size_t>(state.range(0));
  std::size_t epoch = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(train::train_epoch(m, data, plan, tc, epoch++));
  }
  state.SetItemsProcessed(state.iterations() * 128);
}
BENCHMARK(BM_TrainEpoch)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_BestOfK(benchmark::State & state)
{
  Rng rng(5);
  std::vector<eval::Trajectory> set(20);
  eval::Trajectory gt;
  for (int t = 0; t < 12; ++t) {
    gt.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    for (auto & s : set) {
      s.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval::best_of_k(set, gt));
  }
}
BENCHMARK(BM_BestOfK);

}  // namespace

BENCHMARK_MAIN();
