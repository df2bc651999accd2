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

#ifndef NAP__TRAIN__LOSS_HPP_
#define NAP__TRAIN__LOSS_HPP_

#include "nap/dataio/samples.hpp"
#include "nap/numeric/graph.hpp"

#include <span>
#include <vector>

namespace nap::train
{

using numeric::Graph;
using numeric::Tensor;
using numeric::Var;

/// sum_t ||p_t - g_t||^2 / T for one trajectory.
double mse_loss(const std::vector<dataio::Point2> & pred, const std::vector<dataio::Point2> & gt);

/// min over samples of mse_loss.
double variety_loss(const std::vector<std::vector<dataio::Point2>> & preds, const std::vector<dataio::Point2> & gt);

/// Per-sample squared error [B x 1]: predictions and targets are one [B x 2]
/// tensor per step.
Var mse_loss(std::span<const Var> pred, std::span<const Tensor> gt);

/// Per-sample min over the K candidate losses [B x 1]; the gradient reaches
/// only the winning candidate.
Var variety_loss(std::span<const Var> per_sample_losses);

/// Per-sample KL(N(mu, sigma^2) || N(0, I)) [B x 1].
Var kl_divergence(Var mu, Var log_variance);

}  // namespace nap::train

#endif  // NAP__TRAIN__LOSS_HPP_
