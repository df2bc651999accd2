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

#ifndef NAP__MODEL__CHECKPOINT_HPP_
#define NAP__MODEL__CHECKPOINT_HPP_

#include "nap/model/nap_model.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace nap::model
{

inline constexpr std::string_view kCheckpointMagic = "NAPCKPT";
inline constexpr std::uint32_t kCheckpointVersion = 1;

/**
 * Binary layout (little-endian):
 *   "NAPCKPT" | u32 version | u32 config length | config text ("key = value")
 *   | u32 tensor count | per tensor: u32 name length, name, u32 rank,
 *   rank x u32 extents, float32 values.
 */
std::string serialize_checkpoint(const NapModel & model);

/// Throws IncompatibleError on bad magic, version, truncation or a
/// parameter layout that does not match the stored configuration.
NapModel deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const NapModel & model, const std::filesystem::path & path);
NapModel load_checkpoint(const std::filesystem::path & path);

}  // namespace nap::model

#endif  // NAP__MODEL__CHECKPOINT_HPP_
