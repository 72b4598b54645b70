// Copyright 2026 The tdcr-learn Authors
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

#include "tdcr/ad/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

namespace tdcr::ad {
namespace {

constexpr char kMagic[4] = {'T', 'D', 'C', 'K'};
constexpr std::uint32_t kMaxNameLength = 4096;
constexpr std::uint32_t kMaxRank = 8;

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is, const char* what) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw std::runtime_error(std::string("checkpoint: truncated ") + what);
  return v;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path,
                      const std::vector<ParamStore::Named>& tensors) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path.string());
  os.write(kMagic, 4);
  write_u32(os, kCheckpointVersion);
  write_u32(os, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, value] : tensors) {
    write_u32(os, static_cast<std::uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u32(os, 2);
    write_u32(os, static_cast<std::uint32_t>(value.rows()));
    write_u32(os, static_cast<std::uint32_t>(value.cols()));
    os.write(reinterpret_cast<const char*>(value.data()),
             static_cast<std::streamsize>(value.size() * sizeof(double)));
  }
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

std::vector<ParamStore::Named> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path.string());
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("checkpoint: bad magic in " + path.string());
  }
  const std::uint32_t version = read_u32(is, "version");
  if (version != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported format version " +
                             std::to_string(version));
  }
  const std::uint32_t count = read_u32(is, "tensor count");
  std::vector<ParamStore::Named> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t name_len = read_u32(is, "name length");
    if (name_len == 0 || name_len > kMaxNameLength) {
      throw std::runtime_error("checkpoint: implausible name length");
    }
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    if (!is) throw std::runtime_error("checkpoint: truncated name");
    const std::uint32_t rank = read_u32(is, "rank");
    if (rank == 0 || rank > kMaxRank) {
      throw std::runtime_error("checkpoint: implausible rank");
    }
    std::uint64_t total = 1;
    std::vector<std::uint32_t> dims(rank);
    for (std::uint32_t d = 0; d < rank; ++d) {
      dims[d] = read_u32(is, "dimension");
      if (dims[d] == 0) throw std::runtime_error("checkpoint: zero dimension");
      total *= dims[d];
    }
    if (rank > 2) {
      throw std::runtime_error("checkpoint: rank > 2 tensors are not supported");
    }
    const int rows = rank == 2 ? static_cast<int>(dims[0]) : 1;
    const int cols = rank == 2 ? static_cast<int>(dims[1]) : static_cast<int>(dims[0]);
    std::vector<double> data(total);
    is.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(total * sizeof(double)));
    if (!is) throw std::runtime_error("checkpoint: truncated tensor data");
    out.push_back({std::move(name), Tensor(rows, cols, std::move(data))});
  }
  return out;
}

}  // namespace tdcr::ad
