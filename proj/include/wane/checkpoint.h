// Copyright (c) 2026 The WANE Authors. All Rights Reserved.
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "wane/model.h"

namespace wane {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointMeta {
  std::string config_echo;      // key=value lines of the training run
  std::uint64_t split_hash = 0; // fingerprint of the edge split trained on
};

struct Checkpoint {
  ModelParams params;
  CheckpointMeta meta;
};

// Layout (all integers and floats little-endian):
//   "WANECKPT" | u32 version | u32 mode | u32 align | u32 agg | u64 struct_dim
//   | 3 x f64 alpha | u64 split_hash | u64 len + config echo bytes
//   | 4 x (u64 rows | u64 cols | rows*cols f64)   structural, words, W1, W2
//   | u64 FNV-1a checksum of everything before it
void save_checkpoint(const ModelParams& params, const CheckpointMeta& meta,
                     const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

std::string encode_checkpoint(const ModelParams& params, const CheckpointMeta& meta);
Checkpoint decode_checkpoint(const std::string& bytes);

}  // namespace wane
