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

#include "wane/dataset.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wane/errors.h"
#include "wane/hash.h"

namespace wane {

Dataset load_dataset(const std::filesystem::path& dir, std::size_t max_len) {
  if (!std::filesystem::is_directory(dir)) throw DataError("dataset directory not found: " + dir.string());
  const auto text = dir / "text.tsv";
  const auto edges = dir / "edges.tsv";
  if (!std::filesystem::exists(text)) throw DataError("missing " + text.string());
  if (!std::filesystem::exists(edges)) throw DataError("missing " + edges.string());
  Dataset ds;
  ds.corpus = build_corpus(text, max_len);
  ds.graph = load_graph(edges, ds.corpus.num_vertices());
  const auto labels = dir / "labels.tsv";
  if (std::filesystem::exists(labels)) ds.labels = load_labels(labels, ds.corpus.num_vertices());
  return ds;
}

std::string encode_split(const EdgeSplit& split) {
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", split.ratio);
  os << "# edge split\nratio\t" << buf << "\nseed\t" << split.seed << "\n";
  for (const Edge& e : split.train.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.weight);
    os << "train\t" << e.u << '\t' << e.v << '\t' << buf << '\n';
  }
  for (const auto& [u, v] : split.test_pos) os << "test_pos\t" << u << '\t' << v << '\n';
  for (const auto& [u, v] : split.test_neg) os << "test_neg\t" << u << '\t' << v << '\n';
  return os.str();
}

void save_split(const EdgeSplit& split, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write split file " + path.string());
  out << encode_split(split);
}

EdgeSplit parse_split(std::istream& in, std::size_t num_vertices, std::string_view source) {
  EdgeSplit split;
  std::vector<Edge> train;
  std::string line;
  std::size_t line_no = 0;
  bool have_ratio = false, have_seed = false;
  auto fail = [&](const std::string& msg) {
    throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + msg);
  };
  auto vertex = [&](const std::string& s) -> VertexId {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (...) {
      fail("bad vertex id '" + s + "'");
    }
    if (used != s.size() || v >= num_vertices) fail("vertex id out of range: " + s);
    return static_cast<VertexId>(v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string tag, a, b, w;
    fields >> tag >> a;
    if (tag == "ratio") {
      split.ratio = std::stod(a);
      have_ratio = true;
      continue;
    }
    if (tag == "seed") {
      split.seed = std::stoull(a);
      have_seed = true;
      continue;
    }
    fields >> b;
    if (b.empty()) fail("expected '<tag>\\t<u>\\t<v>'");
    if (tag == "train") {
      fields >> w;
      train.push_back({vertex(a), vertex(b), w.empty() ? 1.0 : std::stod(w)});
    } else if (tag == "test_pos") {
      split.test_pos.emplace_back(vertex(a), vertex(b));
    } else if (tag == "test_neg") {
      split.test_neg.emplace_back(vertex(a), vertex(b));
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  if (!have_ratio || !have_seed) throw DataError(std::string(source) + ": split header incomplete");
  split.train = Graph(num_vertices, std::move(train));
  return split;
}

EdgeSplit load_split(const std::filesystem::path& path, std::size_t num_vertices) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open split file " + path.string());
  return parse_split(in, num_vertices, path.string());
}

std::uint64_t split_hash(const EdgeSplit& split) {
  Fnv1a h;
  h.update(encode_split(split));
  return h.digest();
}

}  // namespace wane
