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

#include "nap/numeric/param_store.hpp"

#include "nap/errors.hpp"

#include <cmath>
#include <utility>

namespace nap::numeric
{

std::size_t ParamStore::add(std::string name, Tensor init)
{
  if (index_.count(name)) {
    throw ConfigError("duplicate parameter name '" + name + "'");
  }
  const std::size_t index = params_.size();
  Parameter p;
  p.grad = Tensor(init.shape());
  p.first_moment = Tensor(init.shape());
  p.second_moment = Tensor(init.shape());
  p.value = std::move(init);
  p.name = name;
  params_.push_back(std::move(p));
  index_.emplace(std::move(name), index);
  return index;
}

std::optional<std::size_t> ParamStore::find(std::string_view name) const
{
  auto it = index_.find(std::string(name));
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t ParamStore::index_of(std::string_view name) const
{
  auto found = find(name);
  if (!found) {
    throw ConfigError("unknown parameter '" + std::string(name) + "'");
  }
  return *found;
}

std::size_t ParamStore::element_count() const noexcept
{
  std::size_t n = 0;
  for (const auto & p : params_) {
    n += p.value.size();
  }
  return n;
}

void ParamStore::zero_grad()
{
  for (auto & p : params_) {
    p.grad.fill(0.0);
  }
  grad_ready_ = false;
}

double ParamStore::grad_norm() const
{
  double sq = 0.0;
  for (const auto & p : params_) {
    for (double g : p.grad.data()) {
      sq += g * g;
    }
  }
  return std::sqrt(sq);
}

void ParamStore::scale_grad(double factor)
{
  for (auto & p : params_) {
    for (double & g : p.grad.data()) {
      g *= factor;
    }
  }
}

void ParamStore::round_to_float()
{
  for (auto & p : params_) {
    for (double & v : p.value.data()) {
      v = static_cast<double>(static_cast<float>(v));
    }
  }
}

bool ParamStore::same_values(const ParamStore & other) const
{
  if (params_.size() != other.params_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name != other.params_[i].name || !(params_[i].value == other.params_[i].value)) {
      return false;
    }
  }
  return true;
}

}  // namespace nap::numeric
