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

#ifndef NAP__DATAIO__RECORDS_HPP_
#define NAP__DATAIO__RECORDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nap::dataio
{

/// One annotated position: pedestrian `ped_id` at (x, y) meters in frame `frame_id`.
struct FrameRecord
{
  std::int64_t frame_id = 0;
  std::int64_t ped_id = 0;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const FrameRecord &) const = default;
};

/// Coordinates are snapped to this lattice (meters) on ingest.
inline constexpr double kCoordinateQuantum = 0x1.0p-30;

/// Rounds to the nearest multiple of kCoordinateQuantum. Differences of two
/// quantized coordinates below 2^22 m are exact in double precision.
double quantize_coordinate(double value);

struct ParseOptions
{
  /// Keep every n-th distinct frame (1 keeps all); used to down-sample raw
  /// annotations to the 0.4 s step.
  std::size_t frame_subsample = 1;
};

/**
 * Parses whitespace-separated "frame_id ped_id x y" lines. Blank lines and
 * '#' comments are skipped. Records are returned sorted by (frame, ped).
 * Throws DataError naming the source and line for malformed input or a
 * duplicate (frame, ped) pair.
 */
std::vector<FrameRecord> parse_trajectory_text(std::string_view text, std::string_view source_name,
                                               const ParseOptions & options = {});
std::vector<FrameRecord> parse_trajectory_file(const std::filesystem::path & path,
                                               const ParseOptions & options = {});

/// Formats records one per line with shortest round-trip precision.
std::string format_trajectory(const std::vector<FrameRecord> & records, std::string_view header_comment = {});
void write_trajectory_file(const std::filesystem::path & path, const std::vector<FrameRecord> & records,
                           std::string_view header_comment = {});

/// Formats a double so that parsing it back yields the same value.
std::string format_real(double value);

}  // namespace nap::dataio

#endif  // NAP__DATAIO__RECORDS_HPP_
