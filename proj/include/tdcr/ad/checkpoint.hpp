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

#ifndef TDCR_AD_CHECKPOINT_HPP_
#define TDCR_AD_CHECKPOINT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "tdcr/ad/tape.hpp"

namespace tdcr::ad {

// Binary checkpoint: magic "TDCK", format-version u32, tensor-count u32,
// then per tensor: name-length u32, UTF-8 name bytes, rank u32, dims u32
// each, f64 values little-endian. Readers reject unknown versions.
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(const std::filesystem::path& path,
                      const std::vector<ParamStore::Named>& tensors);

std::vector<ParamStore::Named> read_checkpoint(const std::filesystem::path& path);

}  // namespace tdcr::ad

#endif  // TDCR_AD_CHECKPOINT_HPP_
