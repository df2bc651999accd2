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

#ifndef NAP__NUMERIC__RANDOM_HPP_
#define NAP__NUMERIC__RANDOM_HPP_

#include "nap/numeric/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>

namespace nap::numeric
{

/// Derives an independent stream seed from a base seed and a key path
/// (e.g. {epoch, batch, sample}). Uses splitmix64 finalisation.
std::uint64_t mix_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

/**
 * @brief Seeded random stream with toolchain-independent output.
 *
 * The engine is mt19937_64 (whose output sequence is fixed by the standard);
 * uniform and normal variates are derived here rather than through the
 * implementation-defined std distributions.
 */
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);
  /// Standard normal via Box-Muller.
  double normal();

private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// n i.i.d. standard normal draws as a rank-1 tensor.
Tensor gaussian_sample(Rng & rng, std::size_t n);

}  // namespace nap::numeric

#endif  // NAP__NUMERIC__RANDOM_HPP_
