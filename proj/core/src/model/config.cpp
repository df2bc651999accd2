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

#include "nap/model/config.hpp"

#include "nap/errors.hpp"

#include <string>

namespace nap::model
{

std::string_view variant_name(Variant v)
{
  switch (v) {
    case Variant::kFull:
      return "full";
    case Variant::kP:
      return "p";
    case Variant::kIss:
      return "iss";
    case Variant::kIsg:
      return "isg";
    case Variant::kIsc:
      return "isc";
  }
  return "full";
}

Variant parse_variant(std::string_view name)
{
  for (Variant v : {Variant::kFull, Variant::kP, Variant::kIss, Variant::kIsg, Variant::kIsc}) {
    if (name == variant_name(v)) {
      return v;
    }
  }
  throw ConfigError("unknown variant '" + std::string(name) + "' (expected full, p, iss, isg or isc)");
}

std::string_view decoder_name(DecoderKind d)
{
  return d == DecoderKind::kNonAutoregressive ? "nar" : "ar";
}

DecoderKind parse_decoder(std::string_view name)
{
  if (name == "nar") {
    return DecoderKind::kNonAutoregressive;
  }
  if (name == "ar") {
    return DecoderKind::kAutoregressive;
  }
  throw ConfigError("unknown decoder '" + std::string(name) + "' (expected nar or ar)");
}

void NapConfig::validate() const
{
  for (auto [name, v] : {std::pair{"d_emb", d_emb}, {"d_h", d_h}, {"d_a", d_a}, {"d_g", d_g}, {"d_s", d_s},
                         {"d_c", d_c}, {"d_p", d_p}, {"d_z", d_z}, {"t_obs", t_obs}, {"t_pred", t_pred},
                         {"icg_hidden", icg_hidden}, {"crop_size", crop_size}, {"scene_channels", scene_channels},
                         {"k", k}}) {
    if (v == 0) {
      throw ConfigError(std::string(name) + " must be positive");
    }
  }
  if (gcn_layers != 1) {
    throw ConfigError("only a single graph-convolution layer is supported (gcn_layers = 1)");
  }
  if (decoder == DecoderKind::kAutoregressive && variant != Variant::kFull) {
    throw ConfigError("the autoregressive reference decoder only supports variant = full");
  }
  if (variant != Variant::kFull && multimodal) {
    throw ConfigError("ablation variants drop the latent variable and cannot be multimodal");
  }
}

bool NapConfig::uses_personal_context() const
{
  return decoder == DecoderKind::kNonAutoregressive && (variant == Variant::kFull || variant == Variant::kP);
}

bool NapConfig::uses_interaction_context() const
{
  return decoder == DecoderKind::kNonAutoregressive && variant != Variant::kP;
}

bool NapConfig::uses_social() const
{
  return variant == Variant::kFull || variant == Variant::kIss || variant == Variant::kIsg;
}

bool NapConfig::uses_scene() const
{
  return variant == Variant::kFull || variant == Variant::kIss || variant == Variant::kIsc;
}

bool NapConfig::uses_latent() const
{
  return variant == Variant::kFull;
}

std::size_t NapConfig::state_width() const
{
  return d_h + (uses_social() ? d_g : 0) + (uses_scene() ? d_s : 0);
}

KeyValues NapConfig::to_key_values() const
{
  return {
    {"d_emb", std::to_string(d_emb)},
    {"d_h", std::to_string(d_h)},
    {"d_a", std::to_string(d_a)},
    {"d_g", std::to_string(d_g)},
    {"d_s", std::to_string(d_s)},
    {"d_c", std::to_string(d_c)},
    {"d_p", std::to_string(d_p)},
    {"d_z", std::to_string(d_z)},
    {"t_obs", std::to_string(t_obs)},
    {"t_pred", std::to_string(t_pred)},
    {"gcn_layers", std::to_string(gcn_layers)},
    {"icg_hidden", std::to_string(icg_hidden)},
    {"crop_size", std::to_string(crop_size)},
    {"scene_channels", std::to_string(scene_channels)},
    {"variant", std::string(variant_name(variant))},
    {"decoder", std::string(decoder_name(decoder))},
    {"multimodal", multimodal ? "true" : "false"},
    {"k", std::to_string(k)},
  };
}

bool NapConfig::apply(std::string_view key, std::string_view value)
{
  auto set_size = [&](std::size_t & field) {
    field = parse_size(key, value);
    return true;
  };
  if (key == "d_emb") return set_size(d_emb);
  if (key == "d_h") return set_size(d_h);
  if (key == "d_a") return set_size(d_a);
  if (key == "d_g") return set_size(d_g);
  if (key == "d_s") return set_size(d_s);
  if (key == "d_c") return set_size(d_c);
  if (key == "d_p") return set_size(d_p);
  if (key == "d_z") return set_size(d_z);
  if (key == "t_obs") return set_size(t_obs);
  if (key == "t_pred") return set_size(t_pred);
  if (key == "gcn_layers") return set_size(gcn_layers);
  if (key == "icg_hidden") return set_size(icg_hidden);
  if (key == "crop_size") return set_size(crop_size);
  if (key == "scene_channels") return set_size(scene_channels);
  if (key == "k") return set_size(k);
  if (key == "variant") {
    variant = parse_variant(value);
    return true;
  }
  if (key == "decoder") {
    decoder = parse_decoder(value);
    return true;
  }
  if (key == "multimodal") {
    multimodal = parse_bool(key, value);
    return true;
  }
  return false;
}

NapConfig NapConfig::from_key_values(const KeyValues & entries)
{
  NapConfig cfg;
  for (const auto & [k, v] : entries) {
    if (!cfg.apply(k, v)) {
      throw ConfigError("unknown model key '" + k + "'");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace nap::model
