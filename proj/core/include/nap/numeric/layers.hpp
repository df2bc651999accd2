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

#ifndef NAP__NUMERIC__LAYERS_HPP_
#define NAP__NUMERIC__LAYERS_HPP_

#include "nap/numeric/graph.hpp"
#include "nap/numeric/random.hpp"

#include <cstddef>
#include <span>

namespace nap::numeric
{

/// Uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) initialisation.
Tensor uniform_fan_in(Shape shape, std::size_t fan_in, Rng & rng);

struct LinearWeights
{
  Var weight;  // [m x n]
  Var bias;    // [m]
};

/// y = x W^T + b for a batch x[B x n].
Var linear(Var x, const LinearWeights & w);

/// Gate rows are stacked as (input, forget, candidate, output).
struct LstmWeights
{
  Var input_weight;   // [4d x n]
  Var hidden_weight;  // [4d x d]
  Var bias;           // [4d]
};

struct LstmState
{
  Var hidden;  // [B x d]
  Var cell;    // [B x d]
};

LstmState lstm_zero_state(Graph & graph, std::size_t batch, std::size_t hidden_dim);

/// One step of the standard LSTM recurrence with sigmoid gates and tanh
/// candidate / output squashing.
LstmState lstm_cell(const LstmState & state, Var x, const LstmWeights & w);

/**
 * Mean-aggregating graph convolution for node `self_index`:
 * ReLU(b + mean_{j != self} W a_j). With no neighbours the mean is the zero
 * vector and the result is ReLU(b). Returns [1 x m].
 */
Var graph_conv(Graph & graph, std::size_t self_index, std::span<const Tensor> node_features,
               const LinearWeights & w);

/// Batched form taking the precomputed neighbour mean per row:
/// ReLU(b + W mean). Identical to graph_conv up to summation order.
Var graph_conv_from_mean(Var neighbor_mean, const LinearWeights & w);

struct ConvNetWeights
{
  Var conv1_weight;  // [8 x C x 3 x 3]
  Var conv1_bias;    // [8]
  Var conv2_weight;  // [16 x 8 x 3 x 3]
  Var conv2_bias;    // [16]
  LinearWeights head;  // [d_s x 16]
};

inline constexpr std::size_t kConv1Channels = 8;
inline constexpr std::size_t kConv2Channels = 16;
inline constexpr std::size_t kConvKernel = 3;

/// conv(3x3, stride 2, pad 1) + ReLU, twice, then global average pooling
/// and a linear head. grid is [B x C x H x W]; returns [B x d_s].
Var conv_net(Var grid, const ConvNetWeights & w);

}  // namespace nap::numeric

#endif  // NAP__NUMERIC__LAYERS_HPP_
