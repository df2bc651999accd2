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

#ifndef NAP__NUMERIC__GRAPH_HPP_
#define NAP__NUMERIC__GRAPH_HPP_

#include "nap/numeric/param_store.hpp"
#include "nap/numeric/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nap::numeric
{

class Graph;

/// Handle to a value recorded on a Graph.
struct Var
{
  Graph * graph = nullptr;
  std::uint32_t id = 0;

  const Tensor & value() const;
  const Shape & shape() const { return value().shape(); }
};

using BackwardFn =
  std::function<void(Graph & graph, std::span<const Var> inputs, const Tensor & out, const Tensor & out_grad)>;

/**
 * @brief Reverse-mode tape.
 *
 * Values are appended in evaluation order, so reverse creation order is a
 * valid topological order for the backward sweep. A graph built with
 * record_gradients = false stores values only and rejects backward().
 *
 * Every recorded value is checked for NaN/Inf; a non-finite value raises
 * NumericError naming the producing operation.
 */
class Graph
{
public:
  explicit Graph(bool record_gradients = true) : record_(record_gradients) {}
  Graph(const Graph &) = delete;
  Graph & operator=(const Graph &) = delete;

  Var constant(Tensor value);
  /// Leaf bound to a store parameter; repeated calls return the same Var.
  Var parameter(const ParamStore & store, std::size_t index);
  Var parameter(const ParamStore & store, std::string_view name);

  /// Appends an operation result. `backward` accumulates into input grads.
  Var record(std::string_view op, Tensor value, std::vector<Var> inputs, BackwardFn backward);

  const Tensor & value(Var v) const { return nodes_.at(v.id).value; }
  bool needs_grad(Var v) const { return nodes_.at(v.id).needs_grad; }
  bool recording() const noexcept { return record_; }

  /// Gradient slot of v, allocated as zeros on first access.
  Tensor & grad_slot(Var v);
  /// Gradient of v after backward(); zeros when v did not receive any.
  Tensor grad(Var v) const;

  /// Backpropagates d(loss)/d(loss) = 1 from a single-element value.
  void backward(Var loss);

  /// Adds parameter-leaf gradients into the store's gradient slots.
  void accumulate_param_grads(ParamStore & store) const;

  std::size_t size() const noexcept { return nodes_.size(); }

private:
  struct Node
  {
    Tensor value;
    Tensor grad;
    std::vector<Var> inputs;
    BackwardFn backward;
    bool needs_grad = false;
    const ParamStore * store = nullptr;
    std::int64_t param_index = -1;
    std::string_view op;
  };

  bool record_;
  std::deque<Node> nodes_;
  std::unordered_map<const Parameter *, std::uint32_t> param_leaves_;
};

}  // namespace nap::numeric

#endif  // NAP__NUMERIC__GRAPH_HPP_
