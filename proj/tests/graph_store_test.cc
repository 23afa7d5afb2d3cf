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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "wane/errors.h"
#include "wane/graph_store.h"

using namespace wane;

namespace {

Graph parse(const std::string& text, std::optional<std::size_t> n = {}) {
  std::istringstream in(text);
  return parse_graph(in, n, "test");
}

// Pearson chi-square p-value for observed counts against probabilities.
double chi_square_p(const std::vector<std::size_t>& counts, const std::vector<double>& probs, std::size_t draws) {
  double stat = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double expected = probs[k] * static_cast<double>(draws);
    const double d = static_cast<double>(counts[k]) - expected;
    stat += d * d / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

double three_sigma(double p, std::size_t n) { return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace

TEST_CASE("load_graph builds symmetric adjacency and unit-weight degrees") {
  const Graph g = parse("0\t1\n1\t2\n");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(std::vector<double>(g.degrees().begin(), g.degrees().end()) == std::vector<double>{1, 2, 1});
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(g.neighbors(1).size() == 2);
}

TEST_CASE("load_graph reads weights, comments and blank lines") {
  const Graph g = parse("# citations\n\n0\t1\t2.5\n2 1 0.5\n");
  CHECK(g.degree(1) == doctest::Approx(3.0));
  CHECK(g.edges()[0].weight == 2.5);
}

TEST_CASE("load_graph rejects malformed input") {
  CHECK_THROWS_WITH_AS(parse("0\t1\n1\t0\n"), doctest::Contains("duplicate undirected edge"), DataError);
  CHECK_THROWS_WITH_AS(parse("0\t1\nfoo\n"), doctest::Contains("test:2"), DataError);
  CHECK_THROWS_AS(parse("0\t1\t-1\n"), DataError);
  CHECK_THROWS_AS(parse("0\t1\t0\n"), DataError);
  CHECK_THROWS_AS(parse("0\t0\n"), DataError);
  CHECK_THROWS_AS(parse("0\t99999999999\n"), DataError);
  CHECK_THROWS_AS(parse("0\t5\n", 5), DataError);
  CHECK_THROWS_AS(parse("0\t1\t2\t3\n"), DataError);
}

TEST_CASE("degrees sum to twice the total edge weight") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Edge> edges;
    std::set<std::pair<VertexId, VertexId>> seen;
    double total = 0.0;
    for (int k = 0; k < 40; ++k) {
      auto u = static_cast<VertexId>(uniform_index(rng, 15));
      auto v = static_cast<VertexId>(uniform_index(rng, 15));
      if (u == v || !seen.insert({std::min(u, v), std::max(u, v)}).second) continue;
      const double w = 0.1 + uniform01(rng);
      edges.push_back({u, v, w});
      total += w;
    }
    const Graph g(15, edges);
    double sum = 0.0;
    for (double d : g.degrees()) sum += d;
    CHECK(sum == doctest::Approx(2.0 * total).epsilon(1e-12));
  }
}

TEST_CASE("split_edges: sizes, disjointness and determinism") {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < 10; ++v) edges.push_back({v, static_cast<VertexId>((v + 1) % 10), 1.0});
  const Graph g(12, edges);

  const EdgeSplit s = split_edges(g, 0.5, 11);
  CHECK(s.train.num_edges() == 5);
  CHECK(s.test_pos.size() == 5);
  CHECK(s.test_neg.size() == 5);
  CHECK(s.train.num_vertices() == 12);

  std::set<std::pair<VertexId, VertexId>> all, train, pos;
  auto key = [](VertexId a, VertexId b) { return std::pair{std::min(a, b), std::max(a, b)}; };
  for (const Edge& e : g.edges()) all.insert(key(e.u, e.v));
  for (const Edge& e : s.train.edges()) train.insert(key(e.u, e.v));
  for (auto [u, v] : s.test_pos) pos.insert(key(u, v));
  std::set<std::pair<VertexId, VertexId>> joined = train;
  joined.insert(pos.begin(), pos.end());
  CHECK(joined == all);
  for (const auto& p : pos) CHECK_FALSE(train.contains(p));
  std::set<std::pair<VertexId, VertexId>> neg;
  for (auto [u, v] : s.test_neg) {
    CHECK(u != v);
    CHECK_FALSE(g.has_edge(u, v));
    CHECK(neg.insert(key(u, v)).second);
  }

  const EdgeSplit again = split_edges(g, 0.5, 11);
  CHECK(std::equal(s.train.edges().begin(), s.train.edges().end(), again.train.edges().begin(),
                   again.train.edges().end()));
  CHECK(s.test_pos == again.test_pos);
  CHECK(s.test_neg == again.test_neg);

  const EdgeSplit full = split_edges(g, 1.0, 11);
  CHECK(full.train.num_edges() == 10);
  CHECK(full.test_pos.empty());
  CHECK(full.test_neg.empty());
}

TEST_CASE("split_edges errors") {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK_THROWS_AS(split_edges(g, 0.0, 1), ConfigError);
  CHECK_THROWS_AS(split_edges(g, 1.5, 1), ConfigError);
  // complete graph: no non-edges for negatives
  CHECK_THROWS_AS(split_edges(g, 0.34, 1), DataError);
}

TEST_CASE("negative sampler probabilities follow degree^0.75") {
  const std::vector<double> degrees{1, 1, 2};
  const AliasSampler s = build_negative_sampler(degrees);
  const double z = 2.0 + std::pow(2.0, 0.75);
  CHECK(s.probability(0) == doctest::Approx(1.0 / z).epsilon(1e-12));
  CHECK(s.probability(2) == doctest::Approx(std::pow(2.0, 0.75) / z).epsilon(1e-12));
  // frozen from the arithmetic above
  CHECK(s.probability(0) == doctest::Approx(0.2716).epsilon(1e-3));
  CHECK(s.probability(1) == doctest::Approx(0.2716).epsilon(1e-3));
  CHECK(s.probability(2) == doctest::Approx(0.4568).epsilon(1e-3));

  const AliasSampler u = build_negative_sampler(std::vector<double>{4, 4, 4});
  for (std::size_t k = 0; k < 3; ++k) CHECK(u.probability(k) == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(build_negative_sampler(std::vector<double>{0, 0}), DataError);
}

TEST_CASE("negative sampler empirical frequencies") {
  // 16^0.75 = 8, so the target is [1/9, 8/9].
  const AliasSampler s = build_negative_sampler(std::vector<double>{1, 16});
  Rng rng(5);
  const std::size_t draws = 1000000;
  std::size_t ones = 0;
  for (std::size_t k = 0; k < draws; ++k) ones += s.sample(rng);
  const double freq = static_cast<double>(ones) / draws;
  CHECK(std::abs(freq - 8.0 / 9.0) < three_sigma(8.0 / 9.0, draws));

  // chi-square on a skewed 5-vertex degree table
  const std::vector<double> degrees{1, 3, 7, 2, 12};
  const AliasSampler t = build_negative_sampler(degrees);
  std::vector<std::size_t> counts(5, 0);
  for (std::size_t k = 0; k < draws; ++k) ++counts[t.sample(rng)];
  std::vector<double> probs;
  double z = 0.0;
  for (double d : degrees) z += std::pow(d, 0.75);
  for (double d : degrees) probs.push_back(std::pow(d, 0.75) / z);
  CHECK(chi_square_p(counts, probs, draws) > 0.001);
}

TEST_CASE("sample_edge_batch") {
  Rng rng(9);
  const Graph single(2, {{0, 1, 1.0}});
  const auto batch = sample_edge_batch(single, 4, rng);
  REQUIRE(batch.size() == 4);
  for (const Edge& e : batch) CHECK(e == single.edges()[0]);

  std::vector<Edge> edges;
  for (VertexId v = 0; v < 5; ++v) edges.push_back({v, static_cast<VertexId>(v + 1), 1.0});
  const Graph path(6, edges);
  const EdgeSampler sampler(path);
  const std::size_t draws = 100000;
  std::vector<std::size_t> counts(5, 0);
  for (const Edge& e : sampler.sample_batch(draws, rng)) ++counts[e.u];
  for (auto c : counts) CHECK(std::abs(static_cast<double>(c) / draws - 0.2) < three_sigma(0.2, draws));

  const Graph weighted(3, {{0, 1, 1.0}, {1, 2, 3.0}});
  std::size_t heavy = 0;
  for (const Edge& e : sample_edge_batch(weighted, draws, rng)) heavy += e.weight == 3.0;
  CHECK(std::abs(static_cast<double>(heavy) / draws - 0.75) < three_sigma(0.75, draws));

  CHECK_THROWS_AS(sample_edge_batch(Graph(3, {}), 1, rng), DataError);
}
