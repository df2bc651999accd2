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

#include "nap/numeric/adam.hpp"

#include "nap/errors.hpp"

#include <cmath>

namespace nap::numeric
{

void adam_step(ParamStore & store, const AdamOptions & options)
{
  if (!store.grad_ready()) {
    throw NumericError("adam_step: gradients have not been populated");
  }
  const std::int64_t step = store.step() + 1;
  const double correction1 = 1.0 - std::pow(options.beta1, static_cast<double>(step));
  const double correction2 = 1.0 - std::pow(options.beta2, static_cast<double>(step));
  for (auto & p : store) {
    for (std::size_t i = 0; i < p.value.size(); ++i) {
      const double g = p.grad[i];
      p.first_moment[i] = options.beta1 * p.first_moment[i] + (1.0 - options.beta1) * g;
      p.second_moment[i] = options.beta2 * p.second_moment[i] + (1.0 - options.beta2) * g * g;
      const double m_hat = p.first_moment[i] / correction1;
      const double v_hat = p.second_moment[i] / correction2;
      p.value[i] -= options.lr * m_hat / (std::sqrt(v_hat) + options.eps);
    }
    if (!p.value.all_finite()) {
      throw NumericError("adam_step: parameter '" + p.name + "' became non-finite");
    }
  }
  store.set_step(step);
}

double clip_grad_norm(ParamStore & store, double max_norm)
{
  const double norm = store.grad_norm();
  if (std::isfinite(max_norm) && norm > max_norm) {
    store.scale_grad(max_norm / norm);
  }
  return norm;
}

}  // namespace nap::numeric
