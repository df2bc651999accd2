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

#ifndef NAP__EVAL__BASELINES_HPP_
#define NAP__EVAL__BASELINES_HPP_

#include "nap/eval/metrics.hpp"

#include <cstddef>

namespace nap::eval
{

/// Repeats the last observed position.
Trajectory constant_position(const Trajectory & obs, std::size_t t_pred);

/// Extrapolates the last observed displacement.
Trajectory constant_velocity(const Trajectory & obs, std::size_t t_pred);

}  // namespace nap::eval

#endif  // NAP__EVAL__BASELINES_HPP_
