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

#ifndef NAP__NUMERIC__PARAM_STORE_HPP_
#define NAP__NUMERIC__PARAM_STORE_HPP_

#include "nap/numeric/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nap::numeric
{

/// One named trainable tensor together with its gradient and Adam moments.
struct Parameter
{
  std::string name;
  Tensor value;
  Tensor grad;
  Tensor first_moment;
  Tensor second_moment;
};

/**
 * @brief Ordered collection of named parameters.
 *
 * Insertion order is stable and defines the order used by the optimizer,
 * checkpoints and gradient reductions. Every gradient slot has the shape of
 * its parameter.
 */
class ParamStore
{
public:
  /// Registers a parameter; throws ConfigError on a duplicate name.
  std::size_t add(std::string name, Tensor init);

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  Parameter & operator[](std::size_t index) { return params_[index]; }
  const Parameter & operator[](std::size_t index) const { return params_[index]; }
  Parameter & at(std::string_view name) { return params_[index_of(name)]; }
  const Parameter & at(std::string_view name) const { return params_[index_of(name)]; }

  std::size_t size() const noexcept { return params_.size(); }
  std::size_t element_count() const noexcept;
  auto begin() noexcept { return params_.begin(); }
  auto end() noexcept { return params_.end(); }
  auto begin() const noexcept { return params_.begin(); }
  auto end() const noexcept { return params_.end(); }

  /// Clears every gradient slot and marks gradients as not yet populated.
  void zero_grad();
  /// Marks gradients as populated (set by backward passes and explicit writes).
  void mark_grad_ready() noexcept { grad_ready_ = true; }
  bool grad_ready() const noexcept { return grad_ready_; }

  double grad_norm() const;
  void scale_grad(double factor);

  /// Rounds every parameter value to the nearest float32.
  void round_to_float();

  std::int64_t step() const noexcept { return step_; }
  void set_step(std::int64_t step) noexcept { step_ = step; }

  /// Bitwise equality of names, shapes and values (gradients ignored).
  bool same_values(const ParamStore & other) const;

private:
  std::vector<Parameter> params_;
  std::unordered_map<std::string, std::size_t> index_;
  std::int64_t step_ = 0;
  bool grad_ready_ = false;
};

}  // namespace nap::numeric

#endif  // NAP__NUMERIC__PARAM_STORE_HPP_
