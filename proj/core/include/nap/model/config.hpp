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

#ifndef NAP__MODEL__CONFIG_HPP_
#define NAP__MODEL__CONFIG_HPP_

#include "nap/config_text.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace nap::model
{

/// Architecture variants: the full model and the four ablations.
enum class Variant
{
  kFull,
  kP,    // personal context only
  kIss,  // interaction context (h, g, s) only
  kIsg,  // interaction context without the scene feature
  kIsc,  // interaction context without the social feature
};

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);

enum class DecoderKind
{
  kNonAutoregressive,
  /// Reference LSTM decoder fed with its own previous prediction.
  kAutoregressive,
};

std::string_view decoder_name(DecoderKind d);
DecoderKind parse_decoder(std::string_view name);

struct NapConfig
{
  std::size_t d_emb = 32;
  std::size_t d_h = 32;
  std::size_t d_a = 32;  // graph-convolution output width
  std::size_t d_g = 32;
  std::size_t d_s = 32;
  std::size_t d_c = 32;
  std::size_t d_p = 32;
  std::size_t d_z = 16;
  std::size_t t_obs = 8;
  std::size_t t_pred = 12;
  std::size_t gcn_layers = 1;
  std::size_t icg_hidden = 128;
  std::size_t crop_size = 16;
  std::size_t scene_channels = 1;
  Variant variant = Variant::kFull;
  DecoderKind decoder = DecoderKind::kNonAutoregressive;
  bool multimodal = false;
  std::size_t k = 20;

  /// Throws ConfigError for non-positive dims or inconsistent flags.
  void validate() const;

  bool uses_personal_context() const;
  bool uses_interaction_context() const;
  bool uses_social() const;
  bool uses_scene() const;
  /// Whether the latent variable feeds the decoder.
  bool uses_latent() const;
  /// Width of h (+ g) (+ s) as seen by the context and latent heads.
  std::size_t state_width() const;
  /// Samples drawn per forecast: K when multimodal, else 1.
  std::size_t sample_count() const { return multimodal ? k : 1; }

  KeyValues to_key_values() const;
  /// Applies one key; returns false when the key is not a model key.
  bool apply(std::string_view key, std::string_view value);
  static NapConfig from_key_values(const KeyValues & entries);

  bool operator==(const NapConfig &) const = default;
};

}  // namespace nap::model

#endif  // NAP__MODEL__CONFIG_HPP_
