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

#include "nap/numeric/layers.hpp"

#include "nap/errors.hpp"
#include "nap/numeric/ops.hpp"

#include <cmath>
#include <vector>

namespace nap::numeric
{

Tensor uniform_fan_in(Shape shape, std::size_t fan_in, Rng & rng)
{
  Tensor t(std::move(shape));
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (auto & v : t.data()) {
    v = rng.uniform(-bound, bound);
  }
  return t;
}

Var linear(Var x, const LinearWeights & w)
{
  return ops::add_bias(ops::matmul_t(x, w.weight), w.bias);
}

LstmState lstm_zero_state(Graph & graph, std::size_t batch, std::size_t hidden_dim)
{
  return {graph.constant(Tensor({batch, hidden_dim})), graph.constant(Tensor({batch, hidden_dim}))};
}

LstmState lstm_cell(const LstmState & state, Var x, const LstmWeights & w)
{
  const std::size_t d = state.hidden.shape().at(1);
  if (w.input_weight.shape().at(0) != 4 * d || w.hidden_weight.shape().at(0) != 4 * d ||
      w.hidden_weight.shape().at(1) != d || w.bias.value().size() != 4 * d) {
    throw ShapeError("lstm_cell: weights do not match hidden size " + std::to_string(d));
  }
  Var gates = ops::add_bias(ops::add(ops::matmul_t(x, w.input_weight), ops::matmul_t(state.hidden, w.hidden_weight)),
                            w.bias);
  Var input_gate = ops::sigmoid(ops::slice_cols(gates, 0, d));
  Var forget_gate = ops::sigmoid(ops::slice_cols(gates, d, d));
  Var candidate = ops::tanh(ops::slice_cols(gates, 2 * d, d));
  Var output_gate = ops::sigmoid(ops::slice_cols(gates, 3 * d, d));
  Var cell = ops::add(ops::mul(forget_gate, state.cell), ops::mul(input_gate, candidate));
  Var hidden = ops::mul(output_gate, ops::tanh(cell));
  return {hidden, cell};
}

Var graph_conv(Graph & graph, std::size_t self_index, std::span<const Tensor> node_features,
               const LinearWeights & w)
{
  if (self_index >= node_features.size()) {
    throw ShapeError("graph_conv: self index out of range");
  }
  const std::size_t n = w.weight.shape().at(1);
  std::vector<double> stacked;
  for (std::size_t j = 0; j < node_features.size(); ++j) {
    if (node_features[j].size() != n) {
      throw ShapeError("graph_conv: node feature " + std::to_string(j) + " has " +
                       std::to_string(node_features[j].size()) + " values, weight expects " + std::to_string(n));
    }
    if (j != self_index) {
      stacked.insert(stacked.end(), node_features[j].data().begin(), node_features[j].data().end());
    }
  }
  const std::size_t m = w.weight.shape().at(0);
  if (stacked.empty()) {
    return ops::relu(ops::add_bias(graph.constant(Tensor({1, m})), w.bias));
  }
  const std::size_t neighbors = stacked.size() / n;
  Var feats = graph.constant(Tensor({neighbors, n}, std::move(stacked)));
  return ops::relu(ops::add_bias(ops::mean_rows(ops::matmul_t(feats, w.weight)), w.bias));
}

Var graph_conv_from_mean(Var neighbor_mean, const LinearWeights & w)
{
  return ops::relu(linear(neighbor_mean, w));
}

Var conv_net(Var grid, const ConvNetWeights & w)
{
  Var x = ops::relu(ops::conv2d(grid, w.conv1_weight, w.conv1_bias, 2, 1));
  x = ops::relu(ops::conv2d(x, w.conv2_weight, w.conv2_bias, 2, 1));
  return linear(ops::global_avg_pool(x), w.head);
}

}  // namespace nap::numeric
