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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wane/graph_store.h"
#include "wane/numkernel.h"
#include "wane/random.h"
#include "wane/text_corpus.h"

namespace wane {

// Text encoder variant: plain word averaging, word-by-context attention, or
// word-by-word alignment.
enum class Mode { kAverage, kWordByContext, kWordByWord };
enum class AlignFn { kSub, kMul, kSubMul };
enum class AggFn { kMax, kMean };

std::string_view to_string(Mode mode);
std::string_view to_string(AlignFn fn);
std::string_view to_string(AggFn fn);
// Accepts the CLI spellings: wane|wane-wc|wane-ww, sub|mult|submult, max|mean.
Mode parse_mode(std::string_view s);
AlignFn parse_align(std::string_view s);
AggFn parse_agg(std::string_view s);

struct ModelConfig {
  Mode mode = Mode::kWordByWord;
  AlignFn align = AlignFn::kSubMul;
  AggFn agg = AggFn::kMax;
  // Structural dimension; the textual embedding has the same width.
  std::size_t struct_dim = 100;
  // Weights of the text|text, text|structure and structure|text terms.
  std::array<double, 3> alpha{1.0, 1.0, 1.0};

  std::size_t text_dim() const { return struct_dim; }
  // Word-embedding width: half the text width when sub and mult features are
  // concatenated, the full width otherwise.
  std::size_t word_dim() const;
  bool uses_text() const { return alpha[0] != 0.0 || alpha[1] != 0.0 || alpha[2] != 0.0; }
  void validate() const;
};

struct ModelParams {
  ModelConfig config;
  Matrix structural;  // N x d_s
  Matrix words;       // |vocab| x d_w
  Matrix w1;          // d_w x d_w, word-by-context only (empty otherwise)
  Matrix w2;

  std::size_t num_vertices() const { return structural.rows(); }
  std::size_t vocab_size() const { return words.rows(); }
};

// Every table uniform in [-0.5/sqrt(width), 0.5/sqrt(width)].
ModelParams init_params(const ModelConfig& config, std::size_t num_vertices,
                        std::size_t vocab_size, Rng& rng);

// Dense gradient tables shaped like ModelParams, with lists of the
// structural and word rows written since the last clear().
class Gradients {
 public:
  Gradients() = default;
  explicit Gradients(const ModelParams& params);

  std::span<double> structural_row(VertexId v);
  std::span<double> word_row(TokenId t);
  Matrix& w1() { return w1_; }
  Matrix& w2() { return w2_; }

  const Matrix& structural() const { return structural_; }
  const Matrix& words() const { return words_; }
  const Matrix& w1() const { return w1_; }
  const Matrix& w2() const { return w2_; }
  const std::vector<std::uint32_t>& touched_structural() const { return touched_structural_; }
  const std::vector<std::uint32_t>& touched_words() const { return touched_words_; }

  void clear();
  void scale(double factor);
  void add(const Gradients& other);

 private:
  Matrix structural_, words_, w1_, w2_;
  std::vector<char> structural_flag_, word_flag_;
  std::vector<std::uint32_t> touched_structural_, touched_words_;
};

// Per-vertex inverted-dropout masks over the d_w x M word matrix of that
// vertex's text (entries 0 or 1/keep). One mask per sequence per loss call.
class DropoutMasks {
 public:
  static DropoutMasks sample(double keep_prob, std::span<const VertexId> vertices,
                             const Corpus& corpus, std::size_t word_dim, Rng& rng);
  void set(VertexId v, Matrix mask);
  const Matrix* find(VertexId v) const;

 private:
  std::vector<std::pair<VertexId, Matrix>> masks_;
};

struct MatchingFeatures {
  Matrix matching;   // d_t x M_a, column i is the matching vector of word i
  Vector norms;      // L2 norm of each matching vector
  Matrix attention;  // M_b x M_a column-softmaxed affinity
};

struct WordByWordResult {
  Vector h;
  MatchingFeatures features;
};

Vector text_embed_avg(const TextSequence& seq, const ModelParams& params);
Vector text_embed_wc(const TextSequence& a, const TextSequence& b, const ModelParams& params);
WordByWordResult text_embed_ww(const TextSequence& a, const TextSequence& b,
                               const ModelParams& params);

// Textual embedding of `a` in the context of `b`, dispatched on the mode.
Vector encode_text(const TextSequence& a, const TextSequence& b, const ModelParams& params);

// Negative samples for each of the four loss terms, in the order
// s|s, t|t, t|s, s|t. Usually all four view one shared set.
struct TermNegatives {
  std::array<std::span<const VertexId>, 4> terms;

  static TermNegatives shared(std::span<const VertexId> set) { return {{set, set, set, set}}; }
};

// Negated, negative-sampled log-likelihood of the directed pair (i | j):
//   -w [ l(s_i|s_j) + a1 l(t_i|t_j) + a2 l(t_i|s_j) + a3 l(s_i|t_j) ]
// with l(a|b) = log s(b.a) + sum_k log s(-b.a_k). Textual embeddings of i and
// of each negative are aligned against t_j; t_j is aligned against t_i.
// Gradients are accumulated into `grads` when it is non-null.
double pair_loss(VertexId i, VertexId j, std::span<const VertexId> negatives, double weight,
                 const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                 Gradients* grads);
double pair_loss(VertexId i, VertexId j, const TermNegatives& negatives, double weight,
                 const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                 Gradients* grads);

// pair_loss(u|v) + pair_loss(v|u) for one undirected edge, computing the two
// endpoint encodings once. Both directions share `masks`.
double edge_loss(VertexId u, VertexId v, std::span<const VertexId> negatives, double weight,
                 const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks, Gradients* grads);
double edge_loss(VertexId u, VertexId v, const TermNegatives& negatives_uv, const TermNegatives& negatives_vu,
                 double weight, const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                 Gradients* grads);

// Full-softmax conditional exp(h_j.h_i) / sum_k exp(h_j.h_k) over the rows of
// `table`. Reference oracle for tiny graphs only.
double softmax_conditional(VertexId i, VertexId j, const Matrix& table);

}  // namespace wane
