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

#include "nap/numeric/graph.hpp"

#include "nap/errors.hpp"

#include <string>
#include <utility>

namespace nap::numeric
{

const Tensor & Var::value() const
{
  return graph->value(*this);
}

Var Graph::constant(Tensor value)
{
  return record("constant", std::move(value), {}, nullptr);
}

Var Graph::parameter(const ParamStore & store, std::size_t index)
{
  const Parameter * key = &store[index];
  if (auto it = param_leaves_.find(key); it != param_leaves_.end()) {
    return Var{this, it->second};
  }
  Var v = record("parameter", store[index].value, {}, nullptr);
  Node & node = nodes_.back();
  node.needs_grad = record_;
  node.store = &store;
  node.param_index = static_cast<std::int64_t>(index);
  param_leaves_.emplace(key, v.id);
  return v;
}

Var Graph::parameter(const ParamStore & store, std::string_view name)
{
  return parameter(store, store.index_of(name));
}

Var Graph::record(std::string_view op, Tensor value, std::vector<Var> inputs, BackwardFn backward)
{
  if (!value.all_finite()) {
    throw NumericError("non-finite value produced by '" + std::string(op) + "'");
  }
  Node node;
  node.value = std::move(value);
  node.op = op;
  if (record_) {
    for (const Var & in : inputs) {
      if (nodes_.at(in.id).needs_grad) {
        node.needs_grad = true;
        break;
      }
    }
    if (node.needs_grad) {
      node.inputs = std::move(inputs);
      node.backward = std::move(backward);
    }
  }
  nodes_.push_back(std::move(node));
  return Var{this, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Tensor & Graph::grad_slot(Var v)
{
  Node & node = nodes_.at(v.id);
  if (node.grad.empty()) {
    node.grad = Tensor(node.value.shape());
  }
  return node.grad;
}

Tensor Graph::grad(Var v) const
{
  const Node & node = nodes_.at(v.id);
  return node.grad.empty() ? Tensor(node.value.shape()) : node.grad;
}

void Graph::backward(Var loss)
{
  if (!record_) {
    throw NumericError("backward() on a graph built without gradient recording");
  }
  if (value(loss).size() != 1) {
    throw ShapeError("backward() needs a single-element loss, got " + shape_string(value(loss).shape()));
  }
  grad_slot(loss)[0] += 1.0;
  for (std::int64_t id = loss.id; id >= 0; --id) {
    Node & node = nodes_[static_cast<std::size_t>(id)];
    if (!node.backward || node.grad.empty()) {
      continue;
    }
    if (!node.grad.all_finite()) {
      throw NumericError("non-finite gradient flowing into '" + std::string(node.op) + "'");
    }
    node.backward(*this, node.inputs, node.value, node.grad);
  }
}

void Graph::accumulate_param_grads(ParamStore & store) const
{
  for (const Node & node : nodes_) {
    if (node.store != &store || node.grad.empty()) {
      continue;
    }
    if (!node.grad.all_finite()) {
      throw NumericError("non-finite gradient for parameter '" +
                         store[static_cast<std::size_t>(node.param_index)].name + "'");
    }
    auto & slot = store[static_cast<std::size_t>(node.param_index)].grad;
    for (std::size_t i = 0; i < slot.size(); ++i) {
      slot[i] += node.grad[i];
    }
  }
  store.mark_grad_ready();
}

}  // namespace nap::numeric
