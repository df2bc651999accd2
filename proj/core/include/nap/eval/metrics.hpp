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

#ifndef NAP__EVAL__METRICS_HPP_
#define NAP__EVAL__METRICS_HPP_

#include "nap/dataio/samples.hpp"

#include <string>
#include <vector>

namespace nap::eval
{

using Trajectory = std::vector<dataio::Point2>;

/// Euclidean distance at every predicted step.
std::vector<double> displacement_errors(const Trajectory & pred, const Trajectory & gt);

/// Mean displacement over the predicted steps.
double ade(const Trajectory & pred, const Trajectory & gt);

/// Displacement at the last predicted step.
double fde(const Trajectory & pred, const Trajectory & gt);

struct ErrorPair
{
  double ade = 0.0;
  double fde = 0.0;
};

/// Minimum ADE and minimum FDE over the samples, each minimized on its own.
ErrorPair best_of_k(const std::vector<Trajectory> & samples, const Trajectory & gt);

/// (e_long - e_short) / e_short * 100.
double error_increment(double e_short, double e_long);

/// "0.45 / 0.89".
std::string format_pair(double ade, double fde, int decimals = 2);

/// "28.57%".
std::string format_percent(double value);

}  // namespace nap::eval

#endif  // NAP__EVAL__METRICS_HPP_
