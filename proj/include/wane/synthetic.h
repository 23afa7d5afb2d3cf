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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wane/graph_store.h"

namespace wane {

// Planted-topic citation-style network: every vertex belongs to a class and
// holds two sub-topics of that class; its text mixes Zipf-distributed
// background words with keywords of its sub-topics, and edges mostly join
// vertices that share a sub-topic.
struct SyntheticConfig {
  std::size_t num_vertices = 600;
  std::size_t num_edges = 1400;
  std::size_t num_classes = 7;
  std::size_t topics_per_class = 6;
  std::size_t keywords_per_topic = 10;
  std::size_t background_vocab = 500;
  std::size_t mean_length = 40;
  double keyword_fraction = 0.2;
  double cross_topic_prob = 0.1;
  std::uint64_t seed = 1;
};

struct SyntheticNetwork {
  std::vector<Edge> edges;
  std::vector<std::string> texts;
  std::vector<std::string> labels;
};

SyntheticNetwork generate_synthetic(const SyntheticConfig& config);

// Writes edges.tsv, text.tsv and labels.tsv into `dir` (created if needed).
void write_dataset(const SyntheticNetwork& net, const std::filesystem::path& dir);

}  // namespace wane
