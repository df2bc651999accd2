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

#ifndef NAP__NUMERIC__ADAM_HPP_
#define NAP__NUMERIC__ADAM_HPP_

#include "nap/numeric/param_store.hpp"

namespace nap::numeric
{

struct AdamOptions
{
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam update of every parameter from its gradient slot.
/// Increments the store step counter. Throws NumericError when gradients
/// have not been populated since the last zero_grad().
void adam_step(ParamStore & store, const AdamOptions & options);

/// Rescales gradients so their global L2 norm is at most max_norm. Returns
/// the norm before clipping. A non-finite max_norm leaves gradients alone.
double clip_grad_norm(ParamStore & store, double max_norm);

}  // namespace nap::numeric

#endif  // NAP__NUMERIC__ADAM_HPP_
