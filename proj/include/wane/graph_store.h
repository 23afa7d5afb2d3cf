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
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wane/random.h"

namespace wane {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

using VertexPair = std::pair<VertexId, VertexId>;

struct Neighbor {
  VertexId vertex;
  double weight;
};

// Undirected weighted graph. Immutable after construction; every edge is
// stored once in `edges()` and twice in the adjacency lists.
class Graph {
 public:
  Graph() = default;

  // Validates ids, weights, self-loops and duplicate undirected edges.
  Graph(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const { return degrees_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> degrees() const { return degrees_; }
  double degree(VertexId v) const { return degrees_[v]; }
  std::span<const Neighbor> neighbors(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;

 private:
  static std::uint64_t key(VertexId u, VertexId v);

  std::vector<Edge> edges_;
  std::vector<double> degrees_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

// Reads `src<TAB>dst[<TAB>weight]` lines ('#' comments and blank lines are
// skipped; any whitespace separates fields). Without `num_vertices` the
// vertex count is max id + 1; with it, ids must lie below that count.
Graph parse_graph(std::istream& in, std::optional<std::size_t> num_vertices = {},
                  std::string_view source = "<stream>");
Graph load_graph(const std::filesystem::path& path,
                 std::optional<std::size_t> num_vertices = {});

struct EdgeSplit {
  Graph train;
  std::vector<VertexPair> test_pos;
  std::vector<VertexPair> test_neg;
  double ratio = 1.0;
  std::uint64_t seed = 0;
};

// Keeps round(ratio * |E|) edges for training; the rest become test_pos and
// an equal number of non-edges of the full graph are drawn for test_neg.
EdgeSplit split_edges(const Graph& g, double ratio, std::uint64_t seed);

// Walker/Vose alias table: O(1) draws from a fixed discrete distribution.
class AliasSampler {
 public:
  AliasSampler() = default;
  explicit AliasSampler(std::span<const double> weights);

  std::size_t sample(Rng& rng) const;
  double probability(std::size_t i) const { return probs_[i]; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
  std::vector<double> accept_;
  std::vector<std::size_t> alias_;
};

// Noise distribution P(v) proportional to degree^(3/4).
AliasSampler build_negative_sampler(const Graph& g);
AliasSampler build_negative_sampler(std::span<const double> degrees);

// Draws edges i.i.d. with probability proportional to their weight.
class EdgeSampler {
 public:
  explicit EdgeSampler(const Graph& g);
  std::vector<Edge> sample_batch(std::size_t batch_size, Rng& rng) const;

 private:
  const Graph* graph_;
  AliasSampler table_;
};

std::vector<Edge> sample_edge_batch(const Graph& g, std::size_t batch_size, Rng& rng);

}  // namespace wane
