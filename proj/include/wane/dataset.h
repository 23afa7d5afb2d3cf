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
#include <iosfwd>
#include <optional>
#include <string>

#include "wane/graph_store.h"
#include "wane/text_corpus.h"

namespace wane {

// A dataset directory holds edges.tsv, text.tsv and optionally labels.tsv.
// The vertex count comes from text.tsv (ids 0..N-1, one line each).
struct Dataset {
  Graph graph;
  Corpus corpus;
  std::optional<Labels> labels;
};

Dataset load_dataset(const std::filesystem::path& dir, std::size_t max_len = kDefaultMaxLen);

// Text form of a split: header lines `ratio` and `seed`, then one line per
// pair tagged train / test_pos / test_neg. Byte-stable for a given split.
std::string encode_split(const EdgeSplit& split);
void save_split(const EdgeSplit& split, const std::filesystem::path& path);
// Rebuilds the train graph on `num_vertices` vertices.
EdgeSplit parse_split(std::istream& in, std::size_t num_vertices, std::string_view source = "<stream>");
EdgeSplit load_split(const std::filesystem::path& path, std::size_t num_vertices);

std::uint64_t split_hash(const EdgeSplit& split);

}  // namespace wane
