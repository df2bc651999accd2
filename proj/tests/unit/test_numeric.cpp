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
#include "nap/errors.hpp"
#include "nap/numeric/adam.hpp"
#include "nap/numeric/grad_check.hpp"
#include "nap/numeric/graph.hpp"
#include "nap/numeric/layers.hpp"
#include "nap/numeric/ops.hpp"
#include "nap/numeric/param_store.hpp"
#include "nap/numeric/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace
{
using namespace nap;
using namespace nap::numeric;
using nap::test::random_tensor;

// ---------------------------------------------------------------- tensor

TEST(Tensor, RejectsMismatchedDataAndZeroExtent)
{
  EXPECT_THROW(Tensor({2, 2}, {1.0, 2.0, 3.0}), ShapeError);
  EXPECT_THROW(Tensor(Shape{0, 3}), ShapeError);
  const Tensor t({2, 3});
  EXPECT_EQ(t.size(), 6u);
}

TEST(Graph, NonFiniteValueIsRejected)
{
  Graph g;
  EXPECT_THROW(g.constant(Tensor::vector({1.0, std::nan("")})), NumericError);
  Var big = g.constant(Tensor::matrix({{800.0}}));
  EXPECT_THROW(ops::exp(big), NumericError);
}

// ---------------------------------------------------------------- linear

Var linear_of(Graph & g, const Tensor & x, const Tensor & w, const Tensor & b)
{
  return linear(g.constant(x), {g.constant(w), g.constant(b)});
}

TEST(Linear, IdentityWeights)
{
  Graph g;
  const Var y = linear_of(g, Tensor::matrix({{1, 2}}), Tensor::matrix({{1, 0}, {0, 1}}), Tensor::vector({0, 0}));
  EXPECT_EQ(y.value().values(), (std::vector<double>{1, 2}));
}

TEST(Linear, HandArithmetic)
{
  Graph g;
  const Var y = linear_of(g, Tensor::matrix({{1, 1}}), Tensor::matrix({{2, 3}}), Tensor::vector({-5}));
  EXPECT_EQ(y.value().values(), (std::vector<double>{0}));
}

TEST(Linear, MatchesDotProductOracle)
{
  Rng rng(11);
  const Tensor x = random_tensor({1, 3}, rng);
  const Tensor w = random_tensor({4, 3}, rng);
  const Tensor b = random_tensor({4}, rng);
  Graph g;
  const Var y = linear_of(g, x, w, b);
  for (std::size_t i = 0; i < 4; ++i) {
    double dot = b[i];
    for (std::size_t j = 0; j < 3; ++j) {
      dot += w.at(i, j) * x[j];
    }
    EXPECT_NEAR(y.value()[i], dot, 1e-14);
  }
}

TEST(Linear, ShapeMismatchThrows)
{
  Graph g;
  EXPECT_THROW(linear_of(g, Tensor::matrix({{1, 2, 3}}), Tensor::matrix({{1, 0}}), Tensor::vector({0})),
               ShapeError);
}

// ---------------------------------------------------------------- lstm

struct LstmFixture
{
  ParamStore store;
  std::size_t n, d;

  LstmFixture(std::size_t n_in, std::size_t hidden, Rng & rng, double scale = 0.5) : n(n_in), d(hidden)
  {
    store.add("w_ih", random_tensor({4 * d, n}, rng, scale));
    store.add("w_hh", random_tensor({4 * d, d}, rng, scale));
    store.add("bias", random_tensor({4 * d}, rng, scale));
  }

  LstmWeights weights(Graph & g) const
  {
    return {g.parameter(store, "w_ih"), g.parameter(store, "w_hh"), g.parameter(store, "bias")};
  }
};

TEST(Lstm, ZeroWeightsKeepZeroHidden)
{
  ParamStore store;
  store.add("w_ih", Tensor({8, 3}));
  store.add("w_hh", Tensor({8, 2}));
  store.add("bias", Tensor({8}));
  Graph g;
  LstmWeights w{g.parameter(store, "w_ih"), g.parameter(store, "w_hh"), g.parameter(store, "bias")};
  LstmState s = lstm_zero_state(g, 1, 2);
  for (int t = 0; t < 3; ++t) {
    s = lstm_cell(s, g.constant(Tensor::matrix({{1.0, -2.0, 3.0}})), w);
  }
  EXPECT_EQ(s.hidden.value().values(), (std::vector<double>{0.0, 0.0}));
}

TEST(Lstm, SingleUnitMatchesScalarUnroll)
{
  // Gate order i, f, g, o.
  const double wi[4] = {0.5, -0.3, 0.8, 0.2};
  const double wh[4] = {0.1, 0.4, -0.6, 0.7};
  const double bb[4] = {0.05, 1.0, -0.1, 0.0};
  ParamStore store;
  store.add("w_ih", Tensor({4, 1}, {wi[0], wi[1], wi[2], wi[3]}));
  store.add("w_hh", Tensor({4, 1}, {wh[0], wh[1], wh[2], wh[3]}));
  store.add("bias", Tensor({4}, {bb[0], bb[1], bb[2], bb[3]}));
  Graph g;
  LstmWeights w{g.parameter(store, "w_ih"), g.parameter(store, "w_hh"), g.parameter(store, "bias")};
  LstmState s = lstm_zero_state(g, 1, 1);
  double h = 0.0, c = 0.0;
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  for (double x : {0.7, -1.2, 2.0}) {
    s = lstm_cell(s, g.constant(Tensor::matrix({{x}})), w);
    const double i = sig(wi[0] * x + wh[0] * h + bb[0]);
    const double f = sig(wi[1] * x + wh[1] * h + bb[1]);
    const double gg = std::tanh(wi[2] * x + wh[2] * h + bb[2]);
    const double o = sig(wi[3] * x + wh[3] * h + bb[3]);
    c = f * c + i * gg;
    h = o * std::tanh(c);
    EXPECT_NEAR(s.hidden.value()[0], h, 1e-14);
    EXPECT_NEAR(s.cell.value()[0], c, 1e-14);
  }
}

TEST(Lstm, GradientMatchesFiniteDifferences)
{
  Rng rng(5);
  LstmFixture fx(3, 4, rng);
  const Tensor x0 = random_tensor({2, 3}, rng), x1 = random_tensor({2, 3}, rng);
  const Tensor target = random_tensor({2, 4}, rng);
  auto objective = [&](Graph & g, ParamStore & store) {
    (void)store;
    LstmState s = lstm_zero_state(g, 2, 4);
    const auto w = fx.weights(g);
    s = lstm_cell(s, g.constant(x0), w);
    s = lstm_cell(s, g.constant(x1), w);
    return ops::sum_all(ops::square(ops::sub(ops::add(s.hidden, s.cell), g.constant(target))));
  };
  const auto r = grad_check(objective, fx.store);
  EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_parameter << "[" << r.worst_index << "]";
  EXPECT_EQ(r.checked, fx.store.element_count());
}

// ---------------------------------------------------------------- graph conv

LinearWeights const_weights(Graph & g, const Tensor & w, const Tensor & b)
{
  return {g.constant(w), g.constant(b)};
}

TEST(GraphConv, SingleNeighbourIdentity)
{
  Graph g;
  const std::vector<Tensor> nodes{Tensor::vector({9, 9}), Tensor::vector({2, 4})};
  const Var y = graph_conv(g, 0, nodes, const_weights(g, Tensor::matrix({{1, 0}, {0, 1}}), Tensor::vector({0, 0})));
  EXPECT_EQ(y.value().values(), (std::vector<double>{2, 4}));
}

TEST(GraphConv, MeanOfTwo)
{
  Graph g;
  const std::vector<Tensor> nodes{Tensor::vector({1, 0}), Tensor::vector({7, 7}), Tensor::vector({3, 0})};
  const Var y = graph_conv(g, 1, nodes, const_weights(g, Tensor::matrix({{1, 0}, {0, 1}}), Tensor::vector({0, 0})));
  EXPECT_EQ(y.value().values(), (std::vector<double>{2, 0}));
}

TEST(GraphConv, EmptyNeighbourSetIsReluOfBias)
{
  Graph g;
  const std::vector<Tensor> nodes{Tensor::vector({5, 5})};
  const Var y =
    graph_conv(g, 0, nodes, const_weights(g, Tensor::matrix({{1, 0}, {0, 1}}), Tensor::vector({-1, 2})));
  EXPECT_EQ(y.value().values(), (std::vector<double>{0, 2}));
}

TEST(GraphConv, PermutationInvariantOnRandomInputs)
{
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(3), m = 1 + rng.below(5), count = 2 + rng.below(6);
    std::vector<Tensor> nodes;
    for (std::size_t j = 0; j < count; ++j) {
      nodes.push_back(random_tensor({n}, rng, 10.0));
    }
    const Tensor w = random_tensor({m, n}, rng), b = random_tensor({m}, rng);
    Graph g;
    const Var a = graph_conv(g, 0, nodes, const_weights(g, w, b));
    std::vector<Tensor> shuffled(nodes.begin() + 1, nodes.end());
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    }
    shuffled.insert(shuffled.begin(), nodes[0]);
    const Var b2 = graph_conv(g, 0, shuffled, const_weights(g, w, b));
    EXPECT_LE(max_abs_diff(a.value(), b2.value()), 1e-6);
  }
}

TEST(GraphConv, ListFormMatchesBatchedMeanForm)
{
  Rng rng(8);
  const std::vector<Tensor> nodes{random_tensor({2}, rng), random_tensor({2}, rng), random_tensor({2}, rng)};
  const Tensor w = random_tensor({4, 2}, rng), b = random_tensor({4}, rng);
  Graph g;
  const Var list_form = graph_conv(g, 0, nodes, const_weights(g, w, b));
  Tensor mean({1, 2});
  mean[0] = (nodes[1][0] + nodes[2][0]) / 2.0;
  mean[1] = (nodes[1][1] + nodes[2][1]) / 2.0;
  const Var mean_form = graph_conv_from_mean(g.constant(mean), const_weights(g, w, b));
  EXPECT_LE(max_abs_diff(list_form.value(), mean_form.value()), 1e-12);
}

// ---------------------------------------------------------------- conv net

struct ConvFixture
{
  ParamStore store;

  ConvFixture(std::size_t channels, std::size_t d_s, Rng & rng)
  {
    store.add("c1w", random_tensor({kConv1Channels, channels, 3, 3}, rng, 0.5));
    store.add("c1b", random_tensor({kConv1Channels}, rng, 0.1));
    store.add("c2w", random_tensor({kConv2Channels, kConv1Channels, 3, 3}, rng, 0.3));
    store.add("c2b", random_tensor({kConv2Channels}, rng, 0.1));
    store.add("hw", random_tensor({d_s, kConv2Channels}, rng, 0.5));
    store.add("hb", random_tensor({d_s}, rng, 0.1));
  }

  ConvNetWeights weights(Graph & g) const
  {
    return {g.parameter(store, "c1w"), g.parameter(store, "c1b"), g.parameter(store, "c2w"),
            g.parameter(store, "c2b"), {g.parameter(store, "hw"), g.parameter(store, "hb")}};
  }
};

TEST(ConvNet, ZeroGridZeroBiasesGivesZeroFeature)
{
  Rng rng(3);
  ConvFixture fx(1, 5, rng);
  for (const char * name : {"c1b", "c2b", "hb"}) {
    fx.store.at(name).value.fill(0.0);
  }
  Graph g;
  const Var y = conv_net(g.constant(Tensor({1, 1, 8, 8})), fx.weights(g));
  EXPECT_EQ(y.value().values(), std::vector<double>(5, 0.0));
}

TEST(ConvNet, HandComputedPooledValue)
{
  // conv1 channel 0 copies the centre tap, conv2 channel 0 sums its 3x3 window
  // of conv1 channel 0, the head reads conv2 channel 0.
  ParamStore store;
  Tensor c1w({kConv1Channels, 1, 3, 3});
  c1w[4] = 1.0;
  Tensor c2w({kConv2Channels, kConv1Channels, 3, 3});
  for (std::size_t k = 0; k < 9; ++k) {
    c2w[k] = 1.0;
  }
  Tensor hw({1, kConv2Channels});
  hw[0] = 1.0;
  store.add("c1w", c1w);
  store.add("c1b", Tensor({kConv1Channels}));
  store.add("c2w", c2w);
  store.add("c2b", Tensor({kConv2Channels}));
  store.add("hw", hw);
  store.add("hb", Tensor({1}));
  const Tensor grid({1, 1, 4, 4}, {1, 2, 3, 4, 5, -6, 7, 8, -9, 10, 11, 12, 13, 14, 15, 16});
  Graph g;
  ConvNetWeights w{g.parameter(store, "c1w"), g.parameter(store, "c1b"), g.parameter(store, "c2w"),
                   g.parameter(store, "c2b"), {g.parameter(store, "hw"), g.parameter(store, "hb")}};
  const Var y = conv_net(g.constant(grid), w);
  // conv1 (stride 2, pad 1) samples the grid at (0,0), (0,2), (2,0), (2,2):
  // 1, 3, -9 -> relu 0, 11. conv2 yields one cell summing them; the average
  // pool of a 1x1 map is that cell.
  EXPECT_DOUBLE_EQ(y.value()[0], 1.0 + 3.0 + 0.0 + 11.0);
}

TEST(ConvNet, GradientMatchesFiniteDifferences)
{
  Rng rng(17);
  ConvFixture fx(2, 3, rng);
  const Tensor grid = random_tensor({2, 2, 6, 6}, rng);
  auto objective = [&](Graph & g, ParamStore &) {
    return ops::sum_all(ops::square(conv_net(g.constant(grid), fx.weights(g))));
  };
  const auto r = grad_check(objective, fx.store);
  EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_parameter << "[" << r.worst_index << "]";
}

TEST(ConvNet, WrongChannelCountThrows)
{
  Rng rng(4);
  ConvFixture fx(1, 3, rng);
  Graph g;
  EXPECT_THROW(conv_net(g.constant(Tensor({1, 2, 6, 6})), fx.weights(g)), ShapeError);
}

// ---------------------------------------------------------------- randomized gradient checks

TEST(GradCheck, LinearLayerIsAccurateToMachineLevel)
{
  Rng rng(1);
  ParamStore store;
  store.add("w", random_tensor({3, 4}, rng));
  store.add("b", random_tensor({3}, rng));
  const Tensor x = random_tensor({5, 4}, rng);
  auto objective = [&](Graph & g, ParamStore & s) {
    return ops::sum_all(ops::square(linear(g.constant(x), {g.parameter(s, "w"), g.parameter(s, "b")})));
  };
  const auto r = grad_check(objective, store);
  EXPECT_LT(r.max_relative_error, 1e-7);
}

TEST(GradCheck, CorruptedGradientIsDetected)
{
  Rng rng(2);
  ParamStore store;
  store.add("w", random_tensor({3, 4}, rng));
  store.add("b", random_tensor({3}, rng));
  const Tensor x = random_tensor({5, 4}, rng);
  auto objective = [&](Graph & g, ParamStore & s) {
    return ops::sum_all(ops::square(linear(g.constant(x), {g.parameter(s, "w"), g.parameter(s, "b")})));
  };
  GradCheckOptions opts;
  opts.tamper = [](ParamStore & s) { s.at("w").grad[2] *= 1.5; };
  EXPECT_GT(grad_check(objective, store, opts).max_relative_error, 1e-2);
}

TEST(GradCheck, EveryLayerOnRandomShapes)
{
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t batch = 1 + rng.below(3), n = 1 + rng.below(4), d = 1 + rng.below(4);
    // linear + relu + sigmoid + tanh + exp
    {
      ParamStore store;
      store.add("w", random_tensor({d, n}, rng));
      store.add("b", random_tensor({d}, rng));
      const Tensor x = random_tensor({batch, n}, rng);
      auto f = [&](Graph & g, ParamStore & s) {
        Var y = linear(g.constant(x), {g.parameter(s, "w"), g.parameter(s, "b")});
        Var a = ops::add(ops::sigmoid(y), ops::tanh(y));
        a = ops::mul(a, ops::exp(ops::scale(y, 0.3)));
        return ops::sum_all(ops::add(ops::square(a), ops::relu(y)));
      };
      const auto r = grad_check(f, store);
      EXPECT_LT(r.max_relative_error, 1e-4) << "dense trial " << trial;
    }
    // lstm over two steps
    {
      LstmFixture fx(n, d, rng);
      const Tensor x0 = random_tensor({batch, n}, rng), x1 = random_tensor({batch, n}, rng);
      auto f = [&](Graph & g, ParamStore &) {
        LstmState s = lstm_zero_state(g, batch, d);
        s = lstm_cell(s, g.constant(x0), fx.weights(g));
        s = lstm_cell(s, g.constant(x1), fx.weights(g));
        return ops::sum_all(ops::square(s.hidden));
      };
      const auto r = grad_check(f, fx.store);
      EXPECT_LT(r.max_relative_error, 1e-4) << "lstm trial " << trial;
    }
    // graph convolution from a neighbour mean, concat / slice, min_across
    {
      ParamStore store;
      store.add("w", random_tensor({d, 2}, rng));
      store.add("b", random_tensor({d}, rng));
      const Tensor mean = random_tensor({batch, 2}, rng, 3.0);
      auto f = [&](Graph & g, ParamStore & s) {
        Var y = graph_conv_from_mean(g.constant(mean), {g.parameter(s, "w"), g.parameter(s, "b")});
        const std::vector<Var> parts{y, ops::scale(y, -2.0)};
        Var cat = ops::concat_cols(parts);
        Var first = ops::sum_cols(ops::square(ops::slice_cols(cat, 0, d)));
        Var second = ops::sum_cols(ops::slice_cols(cat, d, d));
        const std::vector<Var> cands{first, ops::add(second, g.constant(Tensor::filled({batch, 1}, 0.5)))};
        return ops::sum_all(ops::min_across(cands));
      };
      const auto r = grad_check(f, store);
      EXPECT_LT(r.max_relative_error, 1e-4) << "gcn trial " << trial;
    }
    // conv net
    {
      ConvFixture fx(1 + rng.below(2), d, rng);
      const std::size_t side = 3 + rng.below(5);
      const Tensor grid = random_tensor({batch, fx.store.at("c1w").value.dim(1), side, side}, rng);
      auto f = [&](Graph & g, ParamStore &) {
        return ops::sum_all(ops::square(conv_net(g.constant(grid), fx.weights(g))));
      };
      const auto r = grad_check(f, fx.store);
      EXPECT_LT(r.max_relative_error, 1e-4) << "conv trial " << trial << " " << r.worst_parameter;
    }
  }
}

TEST(Ops, ForwardIsPure)
{
  Rng rng(6);
  ConvFixture fx(1, 4, rng);
  const Tensor grid = random_tensor({2, 1, 8, 8}, rng);
  Graph g1, g2;
  const Var a = conv_net(g1.constant(grid), fx.weights(g1));
  const Var b = conv_net(g2.constant(grid), fx.weights(g2));
  EXPECT_EQ(a.value(), b.value());
}

// ---------------------------------------------------------------- adam

TEST(Adam, ZeroGradientLeavesParametersUnchanged)
{
  Rng rng(7);
  ParamStore store;
  store.add("w", random_tensor({3, 3}, rng));
  const Tensor before = store.at("w").value;
  for (int i = 0; i < 5; ++i) {
    store.zero_grad();
    store.mark_grad_ready();
    adam_step(store, {});
  }
  EXPECT_EQ(store.at("w").value, before);
  EXPECT_EQ(store.step(), 5);
}

TEST(Adam, FirstStepMovesByLearningRate)
{
  ParamStore store;
  store.add("w", Tensor::vector({0.0}));
  store.zero_grad();
  store.at("w").grad[0] = 1.0;
  store.mark_grad_ready();
  adam_step(store, {.lr = 0.1});
  EXPECT_NEAR(store.at("w").value[0], -0.1, 1e-8);
}

TEST(Adam, QuadraticDescendsMonotonically)
{
  ParamStore store;
  store.add("w", Tensor::vector({1.0}));
  double previous = 1.0;
  for (int step = 0; step < 100; ++step) {
    store.zero_grad();
    store.at("w").grad[0] = 2.0 * store.at("w").value[0];
    store.mark_grad_ready();
    adam_step(store, {.lr = 0.005});
    const double now = std::abs(store.at("w").value[0]);
    EXPECT_LT(now, previous);
    previous = now;
  }
}

TEST(Adam, MissingGradientThrows)
{
  ParamStore store;
  store.add("w", Tensor::vector({1.0}));
  store.zero_grad();
  EXPECT_THROW(adam_step(store, {}), NumericError);
}

TEST(ClipGradNorm, NeverIncreasesAndInfinityIsIdentity)
{
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    ParamStore store;
    store.add("a", random_tensor({4}, rng));
    store.add("b", random_tensor({2, 3}, rng));
    store.zero_grad();
    for (auto & p : store) {
      for (auto & g : p.grad.data()) {
        g = rng.uniform(-10, 10);
      }
    }
    const double before = store.grad_norm();
    ParamStore copy = store;
    clip_grad_norm(copy, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < store.size(); ++i) {
      EXPECT_EQ(copy[i].grad, store[i].grad);
    }
    const double max_norm = rng.uniform(0.1, 20.0);
    EXPECT_EQ(clip_grad_norm(store, max_norm), before);
    EXPECT_LE(store.grad_norm(), std::min(before, max_norm) * (1 + 1e-12));
  }
}

// ---------------------------------------------------------------- rng

TEST(Gaussian, SameSeedSameStream)
{
  Rng a(42), b(42);
  EXPECT_EQ(gaussian_sample(a, 1000), gaussian_sample(b, 1000));
}

TEST(Gaussian, DifferentSeedsDiffer)
{
  Rng a(1), b(2);
  EXPECT_NE(gaussian_sample(a, 16), gaussian_sample(b, 16));
}

TEST(Gaussian, LawOfLargeNumbers)
{
  Rng rng(2024);
  const Tensor t = gaussian_sample(rng, 100000);
  double mean = 0.0;
  for (double v : t.values()) {
    mean += v;
  }
  mean /= static_cast<double>(t.size());
  double var = 0.0;
  for (double v : t.values()) {
    var += (v - mean) * (v - mean);
  }
  var /= static_cast<double>(t.size() - 1);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Random, MixSeedSeparatesKeys)
{
  EXPECT_NE(mix_seed(1, {2, 3}), mix_seed(1, {3, 2}));
  EXPECT_NE(mix_seed(1, {2}), mix_seed(2, {2}));
  EXPECT_EQ(mix_seed(5, {6, 7}), mix_seed(5, {6, 7}));
}

TEST(ParamStore, DuplicateNamesRejectedAndGradShapesMatch)
{
  ParamStore store;
  store.add("w", Tensor({2, 3}));
  EXPECT_THROW(store.add("w", Tensor({1})), ConfigError);
  for (const auto & p : store) {
    EXPECT_EQ(p.grad.shape(), p.value.shape());
  }
}

}  // namespace
