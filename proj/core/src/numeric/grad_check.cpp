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

#include "nap/numeric/grad_check.hpp"

#include "nap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nap::numeric
{
namespace
{
double evaluate(const ScalarObjective & objective, ParamStore & store)
{
  Graph graph(false);
  const double v = objective(graph, store).value()[0];
  if (!std::isfinite(v)) {
    throw NumericError("grad_check: objective is not finite");
  }
  return v;
}
}  // namespace

GradCheckResult grad_check(const ScalarObjective & objective, ParamStore & store, const GradCheckOptions & options)
{
  store.zero_grad();
  {
    Graph graph(true);
    Var loss = objective(graph, store);
    graph.backward(loss);
    graph.accumulate_param_grads(store);
  }
  if (options.tamper) {
    options.tamper(store);
  }

  GradCheckResult result;
  for (auto & p : store) {
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double original = p.value[i];
      const double analytic = p.grad[i];
      double best = std::numeric_limits<double>::infinity();
      double best_numeric = 0.0;
      for (double h : options.steps) {
        p.value[i] = original + h;
        const double up = evaluate(objective, store);
        p.value[i] = original - h;
        const double down = evaluate(objective, store);
        p.value[i] = original;
        const double numeric = (up - down) / (2.0 * h);
        const double denom = std::max({std::abs(analytic), std::abs(numeric), options.denominator_floor});
        const double rel = std::abs(analytic - numeric) / denom;
        if (rel < best) {
          best = rel;
          best_numeric = numeric;
        }
        if (best < 1e-9) {
          break;
        }
      }
      const double rel = best;
      const double numeric = best_numeric;
      ++result.checked;
      if (rel > result.max_relative_error || result.checked == 1) {
        result.max_relative_error = rel;
        result.worst_parameter = p.name;
        result.worst_index = i;
        result.analytic = analytic;
        result.numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace nap::numeric
