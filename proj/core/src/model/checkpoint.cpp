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

#include "nap/model/checkpoint.hpp"

#include "nap/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nap::model
{
namespace
{
static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

void put_u32(std::string & out, std::uint32_t v)
{
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

class Reader
{
public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n, const char * what)
  {
    if (bytes_.size() - pos_ < n) {
      throw IncompatibleError(std::string("checkpoint truncated while reading ") + what);
    }
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32(const char * what)
  {
    std::uint32_t v;
    std::memcpy(&v, take(4, what).data(), 4);
    return v;
  }

  bool at_end() const { return pos_ == bytes_.size(); }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};
}  // namespace

std::string serialize_checkpoint(const NapModel & model)
{
  std::string out(kCheckpointMagic);
  put_u32(out, kCheckpointVersion);
  const std::string config = format_key_values(model.config().to_key_values());
  put_u32(out, static_cast<std::uint32_t>(config.size()));
  out += config;
  const auto & params = model.params();
  put_u32(out, static_cast<std::uint32_t>(params.size()));
  for (const auto & p : params) {
    put_u32(out, static_cast<std::uint32_t>(p.name.size()));
    out += p.name;
    put_u32(out, static_cast<std::uint32_t>(p.value.rank()));
    for (std::size_t d : p.value.shape()) {
      put_u32(out, static_cast<std::uint32_t>(d));
    }
    for (double v : p.value.values()) {
      const float f = static_cast<float>(v);
      char buf[4];
      std::memcpy(buf, &f, 4);
      out.append(buf, 4);
    }
  }
  return out;
}

NapModel deserialize_checkpoint(std::string_view bytes)
{
  Reader in(bytes);
  if (in.take(kCheckpointMagic.size(), "magic") != kCheckpointMagic) {
    throw IncompatibleError("not a NAP checkpoint (bad magic)");
  }
  const std::uint32_t version = in.u32("version");
  if (version != kCheckpointVersion) {
    throw IncompatibleError("unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t config_len = in.u32("config length");
  NapConfig config;
  try {
    config = NapConfig::from_key_values(parse_key_values(in.take(config_len, "config"), "checkpoint config"));
  } catch (const ConfigError & e) {
    throw IncompatibleError(std::string("checkpoint config: ") + e.what());
  }
  const std::uint32_t count = in.u32("tensor count");
  numeric::ParamStore params;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name(in.take(in.u32("name length"), "name"));
    const std::uint32_t rank = in.u32("rank");
    if (rank == 0 || rank > 8) {
      throw IncompatibleError("tensor '" + name + "' has invalid rank " + std::to_string(rank));
    }
    numeric::Shape shape;
    std::size_t n = 1;
    for (std::uint32_t r = 0; r < rank; ++r) {
      shape.push_back(in.u32("extent"));
      if (shape.back() == 0) {
        throw IncompatibleError("tensor '" + name + "' has a zero extent");
      }
      n *= shape.back();
    }
    if (n > bytes.size()) {
      throw IncompatibleError("checkpoint truncated in tensor '" + name + "'");
    }
    const auto raw = in.take(n * 4, "tensor data");
    std::vector<double> data(n);
    for (std::size_t j = 0; j < n; ++j) {
      float f;
      std::memcpy(&f, raw.data() + j * 4, 4);
      data[j] = f;
    }
    params.add(std::move(name), numeric::Tensor(std::move(shape), std::move(data)));
  }
  if (!in.at_end()) {
    throw IncompatibleError("trailing bytes after checkpoint tensors");
  }
  return NapModel(std::move(config), std::move(params));
}

void save_checkpoint(const NapModel & model, const std::filesystem::path & path)
{
  const std::string bytes = serialize_checkpoint(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw DataError("cannot write checkpoint " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw DataError("failed writing checkpoint " + path.string());
  }
}

NapModel load_checkpoint(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot read checkpoint " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_checkpoint(buf.str());
}

}  // namespace nap::model
