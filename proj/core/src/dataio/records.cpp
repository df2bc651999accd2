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

#include "nap/dataio/records.hpp"

#include "nap/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace nap::dataio
{
namespace
{
template <typename T>
T parse_number(std::string_view token, std::string_view source, std::size_t line_no, const char * what)
{
  T value{};
  const char * first = token.data();
  const char * last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": invalid " + what + " '" +
                    std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_whitespace(std::string_view line)
{
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    if (j > i) {
      tokens.push_back(line.substr(i, j - i));
    }
    i = j;
  }
  return tokens;
}
}  // namespace

double quantize_coordinate(double value)
{
  return std::nearbyint(value / kCoordinateQuantum) * kCoordinateQuantum;
}

std::vector<FrameRecord> parse_trajectory_text(std::string_view text, std::string_view source_name,
                                               const ParseOptions & options)
{
  if (options.frame_subsample == 0) {
    throw ConfigError("frame_subsample must be at least 1");
  }
  std::vector<FrameRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto tokens = split_whitespace(line);
    if (tokens.empty()) {
      if (end == text.size()) {
        break;
      }
      continue;
    }
    if (tokens.size() != 4) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": expected 4 fields, got " +
                      std::to_string(tokens.size()));
    }
    FrameRecord r;
    // Real-valued ids ("10.0") appear in some published ETH/UCY exports.
    const double frame = parse_number<double>(tokens[0], source_name, line_no, "frame_id");
    const double ped = parse_number<double>(tokens[1], source_name, line_no, "ped_id");
    if (frame != std::floor(frame) || ped != std::floor(ped)) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": ids must be integral");
    }
    r.frame_id = static_cast<std::int64_t>(frame);
    r.ped_id = static_cast<std::int64_t>(ped);
    r.x = parse_number<double>(tokens[2], source_name, line_no, "x");
    r.y = parse_number<double>(tokens[3], source_name, line_no, "y");
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": non-finite coordinate");
    }
    r.x = quantize_coordinate(r.x);
    r.y = quantize_coordinate(r.y);
    records.push_back(r);
    if (end == text.size()) {
      break;
    }
  }

  std::stable_sort(records.begin(), records.end(), [](const FrameRecord & a, const FrameRecord & b) {
    return std::pair(a.frame_id, a.ped_id) < std::pair(b.frame_id, b.ped_id);
  });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].frame_id == records[i - 1].frame_id && records[i].ped_id == records[i - 1].ped_id) {
      throw DataError(std::string(source_name) + ": duplicate record for frame " +
                      std::to_string(records[i].frame_id) + ", pedestrian " + std::to_string(records[i].ped_id));
    }
  }

  if (options.frame_subsample > 1) {
    std::set<std::int64_t> frames;
    for (const auto & r : records) {
      frames.insert(r.frame_id);
    }
    std::set<std::int64_t> kept;
    std::size_t k = 0;
    for (auto f : frames) {
      if (k++ % options.frame_subsample == 0) {
        kept.insert(f);
      }
    }
    std::erase_if(records, [&](const FrameRecord & r) { return !kept.count(r.frame_id); });
  }
  return records;
}

std::vector<FrameRecord> parse_trajectory_file(const std::filesystem::path & path, const ParseOptions & options)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read trajectory file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trajectory_text(buffer.str(), path.string(), options);
}

std::string format_real(double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_trajectory(const std::vector<FrameRecord> & records, std::string_view header_comment)
{
  std::string out;
  if (!header_comment.empty()) {
    out += "# ";
    out += header_comment;
    out += '\n';
  }
  for (const auto & r : records) {
    out += std::to_string(r.frame_id);
    out += ' ';
    out += std::to_string(r.ped_id);
    out += ' ';
    out += format_real(r.x);
    out += ' ';
    out += format_real(r.y);
    out += '\n';
  }
  return out;
}

void write_trajectory_file(const std::filesystem::path & path, const std::vector<FrameRecord> & records,
                           std::string_view header_comment)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write trajectory file '" + path.string() + "'");
  }
  out << format_trajectory(records, header_comment);
  if (!out) {
    throw DataError("write failed for '" + path.string() + "'");
  }
}

}  // namespace nap::dataio
