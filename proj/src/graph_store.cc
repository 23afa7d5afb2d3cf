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

#include "wane/graph_store.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "wane/errors.h"

namespace wane {

namespace {

std::string at(std::string_view source, std::size_t line_no) {
  std::ostringstream os;
  os << source << ":" << line_no << ": ";
  return os.str();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

bool parse_id(std::string_view s, std::uint64_t& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges)
    : edges_(std::move(edges)), degrees_(num_vertices, 0.0) {
  if (num_vertices > std::numeric_limits<VertexId>::max()) {
    throw DataError("graph: vertex count exceeds 32-bit id range");
  }
  edge_keys_.reserve(edges_.size() * 2);
  std::vector<std::size_t> counts(num_vertices, 0);
  for (const Edge& e : edges_) {
    if (e.u >= num_vertices || e.v >= num_vertices) {
      throw DataError("graph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") references a vertex outside [0, " + std::to_string(num_vertices) + ")");
    }
    if (e.u == e.v) {
      throw DataError("graph: self-loop on vertex " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw DataError("graph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") has non-positive weight");
    }
    if (!edge_keys_.insert(key(e.u, e.v)).second) {
      throw DataError("graph: duplicate undirected edge (" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + ")");
    }
    degrees_[e.u] += e.weight;
    degrees_[e.v] += e.weight;
    ++counts[e.u];
    ++counts[e.v];
  }
  offsets_.assign(num_vertices + 1, 0);
  for (std::size_t v = 0; v < num_vertices; ++v) offsets_[v + 1] = offsets_[v] + counts[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.weight};
    adjacency_[fill[e.v]++] = {e.u, e.weight};
  }
}

std::uint64_t Graph::key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::span<const Neighbor> Graph::neighbors(VertexId v) const {
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  return edge_keys_.contains(key(u, v));
}

Graph parse_graph(std::istream& in, std::optional<std::size_t> num_vertices,
                  std::string_view source) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  const std::uint64_t id_limit =
      num_vertices ? *num_vertices : static_cast<std::uint64_t>(std::numeric_limits<VertexId>::max());
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#') continue;
    if (fields.size() < 2 || fields.size() > 3) {
      throw DataError(at(source, line_no) + "expected 'src<TAB>dst[<TAB>weight]'");
    }
    std::uint64_t u = 0, v = 0;
    if (!parse_id(fields[0], u) || !parse_id(fields[1], v)) {
      throw DataError(at(source, line_no) + "vertex ids must be non-negative integers");
    }
    if (u >= id_limit || v >= id_limit) {
      throw DataError(at(source, line_no) + "vertex id out of range (limit " +
                      std::to_string(id_limit) + ")");
    }
    double w = 1.0;
    if (fields.size() == 3) {
      std::string tmp(fields[2]);
      char* end = nullptr;
      w = std::strtod(tmp.c_str(), &end);
      if (end != tmp.c_str() + tmp.size()) {
        throw DataError(at(source, line_no) + "malformed weight '" + tmp + "'");
      }
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw DataError(at(source, line_no) + "edge weight must be positive");
      }
    }
    if (u == v) throw DataError(at(source, line_no) + "self-loop");
    max_id = std::max({max_id, u, v});
    any = true;
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  const std::size_t n = num_vertices ? *num_vertices : (any ? max_id + 1 : 0);
  try {
    return Graph(n, std::move(edges));
  } catch (const DataError& e) {
    throw DataError(std::string(source) + ": " + e.what());
  }
}

Graph load_graph(const std::filesystem::path& path, std::optional<std::size_t> num_vertices) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge file " + path.string());
  return parse_graph(in, num_vertices, path.string());
}

EdgeSplit split_edges(const Graph& g, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw ConfigError("split ratio must lie in (0, 1]");
  }
  Rng rng(seed);
  std::vector<std::size_t> order(g.num_edges());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle_range(order.begin(), order.end(), rng);

  const auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(g.num_edges())));
  EdgeSplit split;
  split.ratio = ratio;
  split.seed = seed;
  std::vector<Edge> train_edges;
  train_edges.reserve(n_train);
  // Train edges keep their original file order so the train graph does not
  // depend on the shuffle beyond membership.
  std::vector<char> in_train(g.num_edges(), 0);
  for (std::size_t k = 0; k < n_train; ++k) in_train[order[k]] = 1;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (in_train[i]) train_edges.push_back(g.edges()[i]);
  }
  for (std::size_t k = n_train; k < order.size(); ++k) {
    const Edge& e = g.edges()[order[k]];
    split.test_pos.emplace_back(e.u, e.v);
  }
  split.train = Graph(g.num_vertices(), std::move(train_edges));

  const std::size_t need = split.test_pos.size();
  const double n = static_cast<double>(g.num_vertices());
  const double non_edges = n * (n - 1.0) / 2.0 - static_cast<double>(g.num_edges());
  if (static_cast<double>(need) > non_edges) {
    throw DataError("split: not enough non-edges to sample " + std::to_string(need) +
                    " negative test pairs");
  }
  std::unordered_set<std::uint64_t> seen;
  while (split.test_neg.size() < need) {
    auto u = static_cast<VertexId>(uniform_index(rng, g.num_vertices()));
    auto v = static_cast<VertexId>(uniform_index(rng, g.num_vertices()));
    if (u == v || g.has_edge(u, v)) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) continue;
    split.test_neg.emplace_back(u, v);
  }
  return split;
}

AliasSampler::AliasSampler(std::span<const double> weights)
    : probs_(weights.size()), accept_(weights.size(), 1.0), alias_(weights.size()) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DataError("sampler: weights must be finite and >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw DataError("sampler: all weights are zero");
  const std::size_t n = weights.size();
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    probs_[i] = weights[i] / total;
    scaled[i] = probs_[i] * static_cast<double>(n);
    alias_[i] = i;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : small) accept_[i] = 1.0;
  for (std::size_t i : large) accept_[i] = 1.0;
}

std::size_t AliasSampler::sample(Rng& rng) const {
  const std::size_t column = uniform_index(rng, probs_.size());
  return uniform01(rng) < accept_[column] ? column : alias_[column];
}

AliasSampler build_negative_sampler(std::span<const double> degrees) {
  std::vector<double> weights(degrees.size());
  for (std::size_t v = 0; v < weights.size(); ++v) weights[v] = std::pow(degrees[v], 0.75);
  try {
    return AliasSampler(weights);
  } catch (const DataError&) {
    throw DataError("negative sampler: every vertex has zero degree");
  }
}

AliasSampler build_negative_sampler(const Graph& g) { return build_negative_sampler(g.degrees()); }

EdgeSampler::EdgeSampler(const Graph& g) : graph_(&g) {
  if (g.num_edges() == 0) throw DataError("edge sampler: graph has no edges");
  std::vector<double> weights;
  weights.reserve(g.num_edges());
  for (const Edge& e : g.edges()) weights.push_back(e.weight);
  table_ = AliasSampler(weights);
}

std::vector<Edge> EdgeSampler::sample_batch(std::size_t batch_size, Rng& rng) const {
  std::vector<Edge> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) batch.push_back(graph_->edges()[table_.sample(rng)]);
  return batch;
}

std::vector<Edge> sample_edge_batch(const Graph& g, std::size_t batch_size, Rng& rng) {
  return EdgeSampler(g).sample_batch(batch_size, rng);
}

}  // namespace wane
