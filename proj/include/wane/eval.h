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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wane/graph_store.h"
#include "wane/model.h"
#include "wane/text_corpus.h"

namespace wane {

// [h_s^i ; h_t^{i|j}]. Without any text term in the loss the textual half is
// left at zero, since those tables are never trained.
Vector pair_embedding(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus);

// Inner product of the two context-aware embeddings of the pair. Symmetric.
double pair_score(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus);

// Mann-Whitney AUC: P(pos > neg) with ties counted as 1/2, via sorting.
double auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

double link_prediction_auc(std::span<const VertexPair> test_pos, std::span<const VertexPair> test_neg,
                           const ModelParams& params, const Corpus& corpus);

// h_s^v concatenated with the mean of h_t^{v|u} over neighbours u in `g`;
// a vertex without neighbours is aligned against its own text.
Vector global_embedding(VertexId v, const ModelParams& params, const Graph& g, const Corpus& corpus);
Matrix global_embeddings(const ModelParams& params, const Graph& g, const Corpus& corpus);

struct ClassifyConfig {
  double train_ratio = 0.5;
  std::size_t repeats = 10;
  std::uint64_t seed = 1;
  double lambda = 1e-4;    // L2 strength of the hinge objective
  std::size_t epochs = 30; // passes over the training split per class
};

struct ClassifyResult {
  double mean_accuracy = 0.0;
  std::vector<double> accuracies;  // one per repeat
};

// One-vs-rest linear SVM (hinge + L2, averaged SGD) on a random train split,
// repeated with fresh splits; splits missing a class are redrawn.
ClassifyResult classify(const Matrix& features, std::span<const int> labels, std::size_t num_classes,
                        const ClassifyConfig& config);

struct EvalReport {
  std::string task;
  std::string metric;
  double value = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> repeats;
  std::vector<std::pair<std::string, std::string>> config;

  // Two-column `key<TAB>value` table; config entries are prefixed "config.".
  void write_tsv(std::ostream& out) const;
};

// Parses key=value lines (blank lines and '#' comments ignored).
std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text);

// `vertex_id<TAB>v1<TAB>...` with a header row; global embeddings.
void export_embeddings(const ModelParams& params, const Graph& g, const Corpus& corpus, std::ostream& out);
void export_embeddings(const ModelParams& params, const Graph& g, const Corpus& corpus,
                       const std::filesystem::path& path);

// Per-token matching-vector norms for both directions of the pair
// (`direction<TAB>position<TAB>token<TAB>norm`). Word-by-word mode only.
void inspect_alignment(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus,
                       std::ostream& out);
void inspect_alignment(VertexId i, VertexId j, const ModelParams& params, const Corpus& corpus,
                       const std::filesystem::path& path);

}  // namespace wane
