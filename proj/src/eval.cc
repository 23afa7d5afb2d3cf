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

#include "wane/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wane/errors.h"
#include "wane/random.h"

namespace wane {

namespace {

void check_vertex(VertexId v, const ModelParams& params, const Corpus& corpus) {
  if (v >= params.num_vertices() || v >= corpus.num_vertices()) {
    throw DataError("vertex " + std::to_string(v) + " is out of range");
  }
}

Vector text_part(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus) {
  if (!params.config.uses_text()) return Vector(params.config.text_dim(), 0.0);
  return encode_text(corpus.text(i), corpus.text(j), params);
}

std::string trim(const std::string& s) {
  const auto lo = s.find_first_not_of(" \t\r");
  if (lo == std::string::npos) return "";
  return s.substr(lo, s.find_last_not_of(" \t\r") - lo + 1);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Vector pair_embedding(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus) {
  check_vertex(i, params, corpus);
  check_vertex(j, params, corpus);
  const auto s = params.structural.row(i);
  Vector h(s.begin(), s.end());
  const Vector t = text_part(i, j, params, corpus);
  h.insert(h.end(), t.begin(), t.end());
  return h;
}

double pair_score(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus) {
  return dot(pair_embedding(i, j, params, corpus), pair_embedding(j, i, params, corpus));
}

double auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) throw DataError("auc: empty positive or negative set");
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) items.push_back({s, true});
  for (double s : neg_scores) items.push_back({s, false});
  for (const auto& it : items)
    if (std::isnan(it.score)) throw NumericError("auc: NaN score");
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.score < b.score; });
  // Twice the Mann-Whitney U, kept integral so ties need no rounding.
  std::uint64_t twice_u = 0, neg_below = 0;
  for (std::size_t k = 0; k < items.size();) {
    std::size_t end = k;
    std::uint64_t p = 0, q = 0;
    while (end < items.size() && items[end].score == items[k].score) {
      (items[end].positive ? p : q) += 1;
      ++end;
    }
    twice_u += 2 * p * neg_below + p * q;
    neg_below += q;
    k = end;
  }
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(pos_scores.size()) * static_cast<double>(neg_scores.size()));
}

double link_prediction_auc(std::span<const VertexPair> test_pos, std::span<const VertexPair> test_neg,
                           const ModelParams& params, const Corpus& corpus) {
  if (test_pos.empty() || test_neg.empty()) throw DataError("link prediction: empty test set");
  Vector pos, neg;
  pos.reserve(test_pos.size());
  neg.reserve(test_neg.size());
  for (const auto& [u, v] : test_pos) pos.push_back(pair_score(u, v, params, corpus));
  for (const auto& [u, v] : test_neg) neg.push_back(pair_score(u, v, params, corpus));
  return auc(pos, neg);
}

Vector global_embedding(VertexId v, const ModelParams& params, const Graph& g, const Corpus& corpus) {
  check_vertex(v, params, corpus);
  if (v >= g.num_vertices()) throw DataError("vertex " + std::to_string(v) + " is not in the graph");
  const auto s = params.structural.row(v);
  Vector h(s.begin(), s.end());
  const auto neighbors = g.neighbors(v);
  Vector t(params.config.text_dim(), 0.0);
  if (neighbors.empty()) {
    t = text_part(v, v, params, corpus);
  } else {
    for (const Neighbor& nb : neighbors) {
      const Vector part = text_part(v, nb.vertex, params, corpus);
      for (std::size_t r = 0; r < t.size(); ++r) t[r] += part[r];
    }
    for (double& x : t) x /= static_cast<double>(neighbors.size());
  }
  h.insert(h.end(), t.begin(), t.end());
  return h;
}

Matrix global_embeddings(const ModelParams& params, const Graph& g, const Corpus& corpus) {
  const std::size_t dim = params.config.struct_dim + params.config.text_dim();
  Matrix out(g.num_vertices(), dim);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const Vector h = global_embedding(v, params, g, corpus);
    std::copy(h.begin(), h.end(), out.row(v).begin());
  }
  return out;
}

ClassifyResult classify(const Matrix& features, std::span<const int> labels, std::size_t num_classes,
                        const ClassifyConfig& config) {
  const std::size_t n = features.rows(), dim = features.cols();
  if (labels.size() != n) throw DataError("classify: labels must cover every embedded vertex");
  if (!(config.train_ratio > 0.0 && config.train_ratio < 1.0)) {
    throw ConfigError("classify: train ratio must lie in (0, 1)");
  }
  if (config.repeats == 0 || config.epochs == 0 || !(config.lambda > 0.0)) {
    throw ConfigError("classify: repeats, epochs and lambda must be positive");
  }
  for (int y : labels)
    if (y < 0 || static_cast<std::size_t>(y) >= num_classes) throw DataError("classify: label out of range");
  const auto n_train = static_cast<std::size_t>(std::llround(config.train_ratio * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) throw DataError("classify: split leaves an empty train or test set");

  Rng rng(config.seed);
  ClassifyResult result;
  std::vector<std::size_t> order(n);
  for (std::size_t rep = 0; rep < config.repeats; ++rep) {
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      std::iota(order.begin(), order.end(), 0);
      shuffle_range(order.begin(), order.end(), rng);
      std::vector<char> seen(num_classes, 0);
      for (std::size_t k = 0; k < n_train; ++k) seen[labels[order[k]]] = 1;
      ok = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    }
    if (!ok) throw DataError("classify: could not draw a train split containing every class");

    const std::span<const std::size_t> train(order.data(), n_train);
    const std::span<const std::size_t> test(order.data() + n_train, n - n_train);

    // Standardise with train statistics; last feature is a constant bias.
    Vector mean(dim, 0.0), inv_std(dim, 0.0);
    for (auto idx : train)
      for (std::size_t f = 0; f < dim; ++f) mean[f] += features(idx, f);
    for (double& m : mean) m /= static_cast<double>(n_train);
    for (auto idx : train)
      for (std::size_t f = 0; f < dim; ++f) {
        const double d = features(idx, f) - mean[f];
        inv_std[f] += d * d;
      }
    for (double& s : inv_std) {
      s = std::sqrt(s / static_cast<double>(n_train));
      s = s > 1e-12 ? 1.0 / s : 1.0;
    }
    Matrix x(n, dim + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t f = 0; f < dim; ++f) x(r, f) = (features(r, f) - mean[f]) * inv_std[f];
      x(r, dim) = 1.0;
    }

    Matrix weights(num_classes, dim + 1);
    std::vector<std::size_t> pass(train.begin(), train.end());
    for (std::size_t c = 0; c < num_classes; ++c) {
      Vector w(dim + 1, 0.0), avg(dim + 1, 0.0);
      std::size_t t = 0, averaged = 0;
      for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_range(pass.begin(), pass.end(), rng);
        for (auto idx : pass) {
          ++t;
          const double eta = 1.0 / (config.lambda * static_cast<double>(t));
          const double y = labels[idx] == static_cast<int>(c) ? 1.0 : -1.0;
          const auto xi = x.row(idx);
          const double margin = y * dot(w, xi);
          const double shrink = 1.0 - eta * config.lambda;
          for (double& wk : w) wk *= shrink;
          if (margin < 1.0)
            for (std::size_t f = 0; f <= dim; ++f) w[f] += eta * y * xi[f];
          if (2 * epoch >= config.epochs) {
            for (std::size_t f = 0; f <= dim; ++f) avg[f] += w[f];
            ++averaged;
          }
        }
      }
      for (std::size_t f = 0; f <= dim; ++f) weights(c, f) = avg[f] / static_cast<double>(averaged);
    }

    std::size_t correct = 0;
    for (auto idx : test) {
      std::size_t best = 0;
      double best_score = -INFINITY;
      for (std::size_t c = 0; c < num_classes; ++c) {
        const double s = dot(weights.row(c), x.row(idx));
        if (s > best_score) {
          best_score = s;
          best = c;
        }
      }
      correct += static_cast<int>(best) == labels[idx];
    }
    result.accuracies.push_back(static_cast<double>(correct) / static_cast<double>(test.size()));
  }
  result.mean_accuracy = std::accumulate(result.accuracies.begin(), result.accuracies.end(), 0.0) /
                         static_cast<double>(result.accuracies.size());
  return result;
}

void EvalReport::write_tsv(std::ostream& out) const {
  out << "task\t" << task << "\n"
      << "metric\t" << metric << "\n"
      << "value\t" << format_double(value) << "\n"
      << "seed\t" << seed << "\n";
  out << "repeats\t";
  for (std::size_t k = 0; k < repeats.size(); ++k) out << (k ? "," : "") << format_double(repeats[k]);
  out << "\n";
  for (const auto& [key, val] : config) out << "config." << key << '\t' << val << "\n";
}

std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void export_embeddings(const ModelParams& params, const Graph& g, const Corpus& corpus, std::ostream& out) {
  const std::size_t dim = params.config.struct_dim + params.config.text_dim();
  out << "vertex_id";
  for (std::size_t k = 1; k <= dim; ++k) out << "\tv" << k;
  out << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out << v;
    for (double x : global_embedding(v, params, g, corpus)) out << '\t' << format_double(x);
    out << '\n';
  }
}

void export_embeddings(const ModelParams& params, const Graph& g, const Corpus& corpus,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  export_embeddings(params, g, corpus, out);
  if (!out) throw DataError("failed writing " + path.string());
}

void inspect_alignment(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus,
                       std::ostream& out) {
  if (params.config.mode != Mode::kWordByWord) {
    throw ConfigError("inspect-alignment needs a wane-ww model (got " +
                      std::string(to_string(params.config.mode)) + ")");
  }
  check_vertex(i, params, corpus);
  check_vertex(j, params, corpus);
  out << "direction\tposition\ttoken\tnorm\n";
  for (const auto& [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
    const auto result = text_embed_ww(corpus.text(a), corpus.text(b), params);
    const auto& tokens = corpus.text(a).tokens;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      out << a << '|' << b << '\t' << k << '\t' << corpus.vocab.token(tokens[k]) << '\t'
          << format_double(result.features.norms[k]) << '\n';
    }
  }
}

void inspect_alignment(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  inspect_alignment(i, j, params, corpus, out);
}

}  // namespace wane
