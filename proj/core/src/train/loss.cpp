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

#include "nap/train/loss.hpp"

#include "nap/errors.hpp"
#include "nap/numeric/ops.hpp"

#include <algorithm>
#include <limits>

namespace nap::train
{
namespace ops = numeric::ops;

double mse_loss(const std::vector<dataio::Point2> & pred, const std::vector<dataio::Point2> & gt)
{
  if (pred.size() != gt.size() || pred.empty()) {
    throw ShapeError("mse_loss: " + std::to_string(pred.size()) + " predicted vs " + std::to_string(gt.size()) +
                     " ground-truth steps");
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const double dx = pred[t].x - gt[t].x;
    const double dy = pred[t].y - gt[t].y;
    sum += dx * dx + dy * dy;
  }
  return sum / static_cast<double>(pred.size());
}

double variety_loss(const std::vector<std::vector<dataio::Point2>> & preds, const std::vector<dataio::Point2> & gt)
{
  if (preds.empty()) {
    throw ShapeError("variety_loss: no samples");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto & p : preds) {
    best = std::min(best, mse_loss(p, gt));
  }
  return best;
}

Var mse_loss(std::span<const Var> pred, std::span<const Tensor> gt)
{
  if (pred.size() != gt.size() || pred.empty()) {
    throw ShapeError("mse_loss: " + std::to_string(pred.size()) + " predicted vs " + std::to_string(gt.size()) +
                     " ground-truth steps");
  }
  Graph & graph = *pred.front().graph;
  Var total;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    Var err = ops::sum_cols(ops::square(ops::sub(pred[t], graph.constant(gt[t]))));
    total = t == 0 ? err : ops::add(total, err);
  }
  return ops::scale(total, 1.0 / static_cast<double>(pred.size()));
}

Var variety_loss(std::span<const Var> per_sample_losses)
{
  if (per_sample_losses.empty()) {
    throw ShapeError("variety_loss: no samples");
  }
  return per_sample_losses.size() == 1 ? per_sample_losses.front() : ops::min_across(per_sample_losses);
}

Var kl_divergence(Var mu, Var log_variance)
{
  Graph & graph = *mu.graph;
  Var terms = ops::sub(ops::add(ops::square(mu), ops::exp(log_variance)), log_variance);
  terms = ops::sub(terms, graph.constant(Tensor::filled(mu.shape(), 1.0)));
  return ops::scale(ops::sum_cols(terms), 0.5);
}

}  // namespace nap::train
