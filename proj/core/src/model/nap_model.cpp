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

#include "nap/model/nap_model.hpp"

#include "nap/errors.hpp"
#include "nap/numeric/ops.hpp"
#include "nap/numeric/random.hpp"

#include <utility>

namespace nap::model
{
namespace ops = numeric::ops;
using numeric::Shape;
using numeric::Tensor;

namespace
{
void add_linear(std::vector<std::pair<std::string, Shape>> & layout, const std::string & prefix, std::size_t out,
                std::size_t in)
{
  layout.push_back({prefix + ".weight", {out, in}});
  layout.push_back({prefix + ".bias", {out}});
}

void add_lstm(std::vector<std::pair<std::string, Shape>> & layout, const std::string & prefix, std::size_t hidden,
              std::size_t in)
{
  layout.push_back({prefix + ".w_ih", {4 * hidden, in}});
  layout.push_back({prefix + ".w_hh", {4 * hidden, hidden}});
  layout.push_back({prefix + ".bias", {4 * hidden}});
}

bool is_bias(const std::string & name)
{
  return name.size() >= 5 && name.compare(name.size() - 5, 5, ".bias") == 0;
}

std::size_t fan_in(const Shape & shape)
{
  std::size_t n = 1;
  for (std::size_t i = 1; i < shape.size(); ++i) {
    n *= shape[i];
  }
  return n;
}
}  // namespace

std::vector<std::pair<std::string, Shape>> NapModel::parameter_layout(const NapConfig & c)
{
  std::vector<std::pair<std::string, Shape>> layout;
  add_linear(layout, "traj.embed", c.d_emb, 2);
  add_lstm(layout, "traj.lstm", c.d_h, c.d_emb);
  if (c.uses_social()) {
    add_linear(layout, "social.gcn", c.d_a, 2);
    add_lstm(layout, "social.lstm", c.d_g, c.d_a);
  }
  if (c.uses_scene()) {
    layout.push_back({"scene.conv1.weight", {numeric::kConv1Channels, c.scene_channels, 3, 3}});
    layout.push_back({"scene.conv1.bias", {numeric::kConv1Channels}});
    layout.push_back({"scene.conv2.weight", {numeric::kConv2Channels, numeric::kConv1Channels, 3, 3}});
    layout.push_back({"scene.conv2.bias", {numeric::kConv2Channels}});
    add_linear(layout, "scene.head", c.d_s, numeric::kConv2Channels);
  }
  const std::size_t width = c.state_width();
  if (c.decoder == DecoderKind::kAutoregressive) {
    add_linear(layout, "latent.mu", c.d_z, width);
    add_linear(layout, "latent.logvar", c.d_z, width);
    add_linear(layout, "ar.init", c.d_h, width);
    add_linear(layout, "ar.embed", c.d_emb, 2);
    add_lstm(layout, "ar.lstm", c.d_h, c.d_emb + c.d_z);
    add_linear(layout, "ar.out", 2, c.d_h);
    return layout;
  }
  std::size_t decoder_in = 0;
  if (c.uses_personal_context()) {
    add_linear(layout, "pcg", c.d_p, c.d_h);
    decoder_in += c.d_p;
  }
  if (c.uses_interaction_context()) {
    add_linear(layout, "icg.fc1", c.icg_hidden, width);
    add_linear(layout, "icg.fc2", c.icg_hidden, c.icg_hidden);
    add_linear(layout, "icg.fc3", c.t_pred * c.d_c, c.icg_hidden);
    decoder_in += c.d_c;
  }
  if (c.uses_latent()) {
    add_linear(layout, "latent.mu", c.d_z, width);
    add_linear(layout, "latent.logvar", c.d_z, width);
    decoder_in += c.d_z;
  }
  add_linear(layout, "decoder", 2, decoder_in);
  return layout;
}

NapModel::NapModel(NapConfig config, std::uint64_t init_seed) : config_(std::move(config))
{
  config_.validate();
  numeric::Rng rng(numeric::mix_seed(init_seed, {0x1A17ULL}));
  for (auto & [name, shape] : parameter_layout(config_)) {
    Tensor init = is_bias(name) ? Tensor(shape) : numeric::uniform_fan_in(shape, fan_in(shape), rng);
    params_.add(name, std::move(init));
  }
  params_.round_to_float();
}

NapModel::NapModel(NapConfig config, numeric::ParamStore params) : config_(std::move(config)), params_(std::move(params))
{
  config_.validate();
  const auto layout = parameter_layout(config_);
  if (layout.size() != params_.size()) {
    throw IncompatibleError("parameter count " + std::to_string(params_.size()) + " does not match configuration (" +
                            std::to_string(layout.size()) + ")");
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto & p = params_[i];
    if (p.name != layout[i].first || p.value.shape() != layout[i].second) {
      throw IncompatibleError("parameter '" + p.name + "' " + numeric::shape_string(p.value.shape()) +
                              " does not match expected '" + layout[i].first + "' " +
                              numeric::shape_string(layout[i].second));
    }
  }
}

numeric::LinearWeights NapModel::linear_weights(Graph & graph, const std::string & prefix) const
{
  return {graph.parameter(params_, prefix + ".weight"), graph.parameter(params_, prefix + ".bias")};
}

numeric::LstmWeights NapModel::lstm_weights(Graph & graph, const std::string & prefix) const
{
  return {graph.parameter(params_, prefix + ".w_ih"), graph.parameter(params_, prefix + ".w_hh"),
          graph.parameter(params_, prefix + ".bias")};
}

std::vector<Var> NapModel::run_lstm(Graph & graph, const std::vector<Var> & inputs, const numeric::LstmWeights & w,
                                    std::size_t hidden) const
{
  const std::size_t batch = inputs.front().shape()[0];
  numeric::LstmState state = numeric::lstm_zero_state(graph, batch, hidden);
  std::vector<Var> outputs;
  for (const Var & x : inputs) {
    state = numeric::lstm_cell(state, x, w);
    outputs.push_back(state.hidden);
  }
  return outputs;
}

Var NapModel::encode_trajectory(Graph & graph, const Batch & batch) const
{
  const auto embed = linear_weights(graph, "traj.embed");
  std::vector<Var> embedded;
  for (const Tensor & step : batch.obs) {
    embedded.push_back(numeric::linear(graph.constant(step), embed));
  }
  return run_lstm(graph, embedded, lstm_weights(graph, "traj.lstm"), config_.d_h).back();
}

Var NapModel::encode_social(Graph & graph, const Batch & batch) const
{
  const auto gcn = linear_weights(graph, "social.gcn");
  std::vector<Var> nodes;
  for (const Tensor & mean : batch.neighbor_mean) {
    nodes.push_back(numeric::graph_conv_from_mean(graph.constant(mean), gcn));
  }
  return run_lstm(graph, nodes, lstm_weights(graph, "social.lstm"), config_.d_g).back();
}

Var NapModel::encode_scene(Graph & graph, const Batch & batch) const
{
  numeric::ConvNetWeights w{graph.parameter(params_, "scene.conv1.weight"), graph.parameter(params_, "scene.conv1.bias"),
                            graph.parameter(params_, "scene.conv2.weight"), graph.parameter(params_, "scene.conv2.bias"),
                            linear_weights(graph, "scene.head")};
  return numeric::conv_net(graph.constant(batch.crops), w);
}

EncodedState NapModel::encode(Graph & graph, const Batch & batch) const
{
  EncodedState out;
  out.h = encode_trajectory(graph, batch);
  std::vector<Var> parts{out.h};
  const bool needs_state = config_.uses_interaction_context() || config_.uses_latent() ||
                           config_.decoder == DecoderKind::kAutoregressive;
  if (needs_state && config_.uses_social()) {
    out.g = encode_social(graph, batch);
    parts.push_back(*out.g);
  }
  if (needs_state && config_.uses_scene()) {
    out.s = encode_scene(graph, batch);
    parts.push_back(*out.s);
  }
  out.state = parts.size() == 1 ? out.h : ops::concat_cols(parts);
  return out;
}

Var NapModel::personal_context(Graph & graph, Var h) const
{
  return numeric::linear(h, linear_weights(graph, "pcg"));
}

std::vector<Var> NapModel::interaction_contexts(Graph & graph, const EncodedState & state) const
{
  Var x = ops::relu(numeric::linear(state.state, linear_weights(graph, "icg.fc1")));
  x = ops::relu(numeric::linear(x, linear_weights(graph, "icg.fc2")));
  x = numeric::linear(x, linear_weights(graph, "icg.fc3"));
  std::vector<Var> steps;
  for (std::size_t t = 0; t < config_.t_pred; ++t) {
    steps.push_back(ops::slice_cols(x, t * config_.d_c, config_.d_c));
  }
  return steps;
}

ContextSet NapModel::contexts(Graph & graph, const EncodedState & state) const
{
  ContextSet out;
  if (config_.uses_personal_context()) {
    out.personal = personal_context(graph, state.h);
  }
  if (config_.uses_interaction_context()) {
    out.steps = interaction_contexts(graph, state);
  }
  return out;
}

LatentVars NapModel::latent(Graph & graph, const EncodedState & state, Var eps) const
{
  LatentVars out;
  out.mu = numeric::linear(state.state, linear_weights(graph, "latent.mu"));
  out.log_variance = numeric::linear(state.state, linear_weights(graph, "latent.logvar"));
  out.sigma = ops::exp(ops::scale(out.log_variance, 0.5));
  if (eps.shape() != out.mu.shape()) {
    throw ShapeError("latent noise " + numeric::shape_string(eps.shape()) + " does not match mu " +
                     numeric::shape_string(out.mu.shape()));
  }
  out.z = ops::add(out.mu, ops::mul(out.sigma, eps));
  return out;
}

Var NapModel::decode_step(Graph & graph, const ContextSet & contexts, std::size_t step, std::optional<Var> z) const
{
  if (step >= config_.t_pred) {
    throw ShapeError("prediction step " + std::to_string(step) + " outside horizon " + std::to_string(config_.t_pred));
  }
  std::vector<Var> parts;
  if (config_.uses_interaction_context()) {
    parts.push_back(contexts.steps.at(step));
  }
  if (config_.uses_personal_context()) {
    parts.push_back(contexts.personal.value());
  }
  if (config_.uses_latent()) {
    if (!z) {
      throw ShapeError("decode_step: this variant needs a latent sample");
    }
    parts.push_back(*z);
  }
  Var input = parts.size() == 1 ? parts.front() : ops::concat_cols(parts);
  return numeric::linear(input, linear_weights(graph, "decoder"));
}

std::vector<Var> NapModel::decode_autoregressive(Graph & graph, const EncodedState & state, std::optional<Var> z) const
{
  if (!z) {
    throw ShapeError("the autoregressive decoder needs a latent sample");
  }
  const std::size_t batch = state.h.shape()[0];
  const auto embed = linear_weights(graph, "ar.embed");
  const auto cell = lstm_weights(graph, "ar.lstm");
  const auto head = linear_weights(graph, "ar.out");
  numeric::LstmState lstm{ops::tanh(numeric::linear(state.state, linear_weights(graph, "ar.init"))),
                          graph.constant(Tensor({batch, config_.d_h}))};
  // The last observed position is the origin of the normalized frame.
  Var position = graph.constant(Tensor({batch, 2}));
  std::vector<Var> outputs;
  for (std::size_t t = 0; t < config_.t_pred; ++t) {
    std::vector<Var> parts{numeric::linear(position, embed), *z};
    lstm = numeric::lstm_cell(lstm, ops::concat_cols(parts), cell);
    position = ops::add(position, numeric::linear(lstm.hidden, head));
    outputs.push_back(position);
  }
  return outputs;
}

std::vector<Var> NapModel::predict(Graph & graph, const Batch & batch, std::optional<Var> eps) const
{
  const EncodedState state = encode(graph, batch);
  std::optional<Var> z;
  if (config_.uses_latent()) {
    if (!eps) {
      throw ShapeError("predict: latent noise required for this configuration");
    }
    z = latent(graph, state, *eps).z;
  }
  if (config_.decoder == DecoderKind::kAutoregressive) {
    return decode_autoregressive(graph, state, z);
  }
  const ContextSet ctx = contexts(graph, state);
  std::vector<Var> out;
  for (std::size_t t = 0; t < config_.t_pred; ++t) {
    out.push_back(decode_step(graph, ctx, t, z));
  }
  return out;
}

}  // namespace nap::model
