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

#include "wane/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "wane/errors.h"
#include "wane/random.h"

namespace wane {

SyntheticNetwork generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.num_vertices < 2 || cfg.num_classes == 0 || cfg.topics_per_class < 2 ||
      cfg.keywords_per_topic == 0 || cfg.background_vocab == 0 || cfg.mean_length < 2) {
    throw ConfigError("synthetic: degenerate configuration");
  }
  const double max_edges = 0.5 * static_cast<double>(cfg.num_vertices) * static_cast<double>(cfg.num_vertices - 1);
  if (static_cast<double>(cfg.num_edges) > 0.5 * max_edges) throw ConfigError("synthetic: too many edges requested");

  Rng rng(cfg.seed);
  const std::size_t n = cfg.num_vertices;
  const std::size_t n_topics = cfg.num_classes * cfg.topics_per_class;

  // Zipf background distribution.
  std::vector<double> zipf(cfg.background_vocab);
  for (std::size_t k = 0; k < zipf.size(); ++k) zipf[k] = 1.0 / static_cast<double>(k + 1);
  const AliasSampler background(zipf);

  SyntheticNetwork net;
  std::vector<std::size_t> cls(n);
  std::vector<std::array<std::size_t, 2>> topics(n);
  std::vector<std::vector<VertexId>> members(n_topics);
  std::vector<double> activity(n);
  for (std::size_t v = 0; v < n; ++v) {
    cls[v] = uniform_index(rng, cfg.num_classes);
    const std::size_t t0 = uniform_index(rng, cfg.topics_per_class);
    std::size_t t1 = uniform_index(rng, cfg.topics_per_class - 1);
    if (t1 >= t0) ++t1;
    topics[v] = {cls[v] * cfg.topics_per_class + t0, cls[v] * cfg.topics_per_class + t1};
    for (auto t : topics[v]) members[t].push_back(static_cast<VertexId>(v));
    // Pareto(alpha=2) activity gives a heavy-tailed degree distribution.
    activity[v] = 1.0 / std::sqrt(1.0 - uniform01(rng));
    net.labels.push_back("class" + std::to_string(cls[v]));
  }

  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t lo = cfg.mean_length / 2, hi = cfg.mean_length * 3 / 2;
    const std::size_t len = lo + uniform_index(rng, hi - lo + 1);
    std::string text;
    for (std::size_t k = 0; k < len; ++k) {
      if (k) text.push_back(' ');
      if (uniform01(rng) < cfg.keyword_fraction) {
        const auto t = topics[v][uniform_index(rng, 2)];
        text += "kw" + std::to_string(t) + "x" + std::to_string(uniform_index(rng, cfg.keywords_per_topic));
      } else {
        text += "w" + std::to_string(background.sample(rng));
      }
    }
    net.texts.push_back(std::move(text));
  }

  const AliasSampler by_activity(activity);
  std::vector<AliasSampler> topic_samplers;
  for (const auto& m : members) {
    std::vector<double> w;
    for (VertexId v : m) w.push_back(activity[v]);
    topic_samplers.emplace_back(w.empty() ? std::vector<double>{1.0} : w);
  }
  std::unordered_set<std::uint64_t> seen;
  std::size_t guard = 0;
  while (net.edges.size() < cfg.num_edges) {
    if (++guard > 1000 * cfg.num_edges) throw ConfigError("synthetic: could not place the requested edges");
    const auto u = static_cast<VertexId>(by_activity.sample(rng));
    VertexId v;
    const auto t = topics[u][uniform_index(rng, 2)];
    if (uniform01(rng) < cfg.cross_topic_prob || members[t].size() < 2) {
      v = static_cast<VertexId>(uniform_index(rng, n));
    } else {
      v = members[t][topic_samplers[t].sample(rng)];
    }
    if (u == v) continue;
    const auto a = std::min(u, v), b = std::max(u, v);
    if (!seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) continue;
    net.edges.push_back({a, b, 1.0});
  }
  return net;
}

void write_dataset(const SyntheticNetwork& net, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream edges(dir / "edges.tsv"), text(dir / "text.tsv"), labels(dir / "labels.tsv");
  if (!edges || !text || !labels) throw DataError("cannot write dataset into " + dir.string());
  for (const Edge& e : net.edges) edges << e.u << '\t' << e.v << '\n';
  for (std::size_t v = 0; v < net.texts.size(); ++v) text << v << '\t' << net.texts[v] << '\n';
  for (std::size_t v = 0; v < net.labels.size(); ++v) labels << v << '\t' << net.labels[v] << '\n';
}

}  // namespace wane
