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

#ifndef NAP__CONFIG_TEXT_HPP_
#define NAP__CONFIG_TEXT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nap
{

/// Ordered "key = value" entries; '#' starts a comment, blank lines ignored.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Throws ConfigError on lines without '=' or on repeated keys.
KeyValues parse_key_values(std::string_view text, std::string_view source_name);
std::string format_key_values(const KeyValues & entries);

std::size_t parse_size(std::string_view key, std::string_view value);
std::uint64_t parse_u64(std::string_view key, std::string_view value);
double parse_real(std::string_view key, std::string_view value);
bool parse_bool(std::string_view key, std::string_view value);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace nap

#endif  // NAP__CONFIG_TEXT_HPP_
