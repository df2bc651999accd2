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

#ifndef NAP__NUMERIC__GRAD_CHECK_HPP_
#define NAP__NUMERIC__GRAD_CHECK_HPP_

#include "nap/numeric/graph.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace nap::numeric
{

/// Builds a scalar loss on the given graph from the store's parameters.
using ScalarObjective = std::function<Var(Graph & graph, ParamStore & store)>;

struct GradCheckOptions
{
  /// Central-difference steps tried per element; the closest agreement is
  /// kept. Large steps suffer from ReLU kinks, small ones from round-off.
  std::vector<double> steps{1e-4, 1e-5, 1e-6};
  /// Lower bound on the relative-error denominator so elements whose true
  /// gradient is ~0 are compared absolutely.
  double denominator_floor = 1e-6;
  /// Applied to the analytic gradients before comparison (negative controls).
  std::function<void(ParamStore &)> tamper;
};

struct GradCheckResult
{
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t checked = 0;
};

/**
 * Compares reverse-mode gradients of every parameter element against central
 * finite differences (f(w+h) - f(w-h)) / 2h over the configured steps. The objective must be pure.
 * Parameter values are restored afterwards; gradient slots hold the analytic
 * gradient on return.
 */
GradCheckResult grad_check(const ScalarObjective & objective, ParamStore & store,
                           const GradCheckOptions & options = {});

}  // namespace nap::numeric

#endif  // NAP__NUMERIC__GRAD_CHECK_HPP_
