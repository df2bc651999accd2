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

#include "nap/eval/metrics.hpp"

#include "nap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nap::eval
{

std::vector<double> displacement_errors(const Trajectory & pred, const Trajectory & gt)
{
  if (pred.size() != gt.size() || pred.empty()) {
    throw ShapeError("displacement error: " + std::to_string(pred.size()) + " predicted vs " +
                     std::to_string(gt.size()) + " ground-truth steps");
  }
  std::vector<double> out(pred.size());
  for (std::size_t t = 0; t < pred.size(); ++t) {
    out[t] = std::hypot(pred[t].x - gt[t].x, pred[t].y - gt[t].y);
  }
  return out;
}

double ade(const Trajectory & pred, const Trajectory & gt)
{
  const auto d = displacement_errors(pred, gt);
  double sum = 0.0;
  for (double v : d) {
    sum += v;
  }
  return sum / static_cast<double>(d.size());
}

double fde(const Trajectory & pred, const Trajectory & gt)
{
  return displacement_errors(pred, gt).back();
}

ErrorPair best_of_k(const std::vector<Trajectory> & samples, const Trajectory & gt)
{
  if (samples.empty()) {
    throw ShapeError("best_of_k: empty sample set");
  }
  ErrorPair best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto & s : samples) {
    best.ade = std::min(best.ade, ade(s, gt));
    best.fde = std::min(best.fde, fde(s, gt));
  }
  return best;
}

double error_increment(double e_short, double e_long)
{
  if (!(e_short > 0.0)) {
    throw NumericError("error increment needs a positive short-horizon error");
  }
  return (e_long - e_short) / e_short * 100.0;
}

std::string format_pair(double ade_value, double fde_value, int decimals)
{
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.*f / %.*f", decimals, ade_value, decimals, fde_value);
  return buf;
}

std::string format_percent(double value)
{
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f%%", value);
  return buf;
}

}  // namespace nap::eval
