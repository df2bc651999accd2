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

#ifndef NAP__NUMERIC__OPS_HPP_
#define NAP__NUMERIC__OPS_HPP_

#include "nap/numeric/graph.hpp"

#include <cstddef>
#include <span>

// Differentiable primitives over Graph values. Matrix operands are rank-2
// with the batch as the leading extent. Shape mismatches raise ShapeError.
namespace nap::numeric::ops
{

/// x[B x n] * w[m x n]^T -> [B x m]
Var matmul_t(Var x, Var w);
/// x[B x m] + b[m] broadcast over rows.
Var add_bias(Var x, Var b);

Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var x, double factor);
Var square(Var x);

Var sigmoid(Var x);
Var tanh(Var x);
Var relu(Var x);
Var exp(Var x);

/// Column-wise concatenation of rank-2 values with equal row counts.
Var concat_cols(std::span<const Var> parts);
/// Columns [start, start + count) of a rank-2 value.
Var slice_cols(Var x, std::size_t start, std::size_t count);

/// Mean over rows: [N x m] -> [1 x m].
Var mean_rows(Var x);
/// Sum over columns: [B x m] -> [B x 1].
Var sum_cols(Var x);
/// Sum of every element -> [1].
Var sum_all(Var x);

/// Elementwise minimum across equally shaped values; the gradient flows only
/// to the first argmin.
Var min_across(std::span<const Var> candidates);

/// 2-D convolution, x[B x C x H x W], w[O x C x k x k], b[O], zero padding.
Var conv2d(Var x, Var w, Var b, std::size_t stride, std::size_t padding);
/// [B x C x H x W] -> [B x C]
Var global_avg_pool(Var x);

Var reshape(Var x, Shape shape);

}  // namespace nap::numeric::ops

#endif  // NAP__NUMERIC__OPS_HPP_
