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

// Shared fixtures and the finite-difference oracle used by the unit and
// acceptance suites. Independent of the analytic backward code paths.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "wane/model.h"
#include "wane/random.h"
#include "wane/text_corpus.h"

namespace wane::testing {

// Corpus over tokens t1..t{vocab-1} (plus <empty>) with random sequences of
// length 1..max_len.
inline Corpus random_corpus(std::size_t num_vertices, std::size_t vocab, std::size_t max_len, Rng& rng) {
  Corpus c;
  for (std::size_t t = 1; t < vocab; ++t) c.vocab.add("t" + std::to_string(t));
  for (std::size_t v = 0; v < num_vertices; ++v) {
    TextSequence seq;
    seq.vertex = static_cast<VertexId>(v);
    const std::size_t len = 1 + uniform_index(rng, max_len);
    for (std::size_t k = 0; k < len; ++k) seq.tokens.push_back(static_cast<TokenId>(uniform_index(rng, vocab)));
    c.sequences.push_back(std::move(seq));
  }
  return c;
}

inline void randomize(Matrix& m, Rng& rng, double scale) {
  for (double& x : m.values()) x = (2.0 * uniform01(rng) - 1.0) * scale;
}

inline ModelParams random_params(const ModelConfig& config, std::size_t n, std::size_t vocab, Rng& rng,
                                 double scale = 0.5) {
  ModelParams p = init_params(config, n, vocab, rng);
  randomize(p.structural, rng, scale);
  randomize(p.words, rng, scale);
  randomize(p.w1, rng, scale);
  randomize(p.w2, rng, scale);
  return p;
}

// |a - n| / max(|a|, |n|, floor). The floor keeps entries whose true value
// is ~0 from being judged on round-off alone.
inline double rel_error(double analytic, double numeric, double floor = 1e-6) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

struct GradCheck {
  double max_rel_err = 0.0;
  std::size_t checked = 0;
  std::string worst;
};

// Central differences (eps = 1e-5) of pair_loss over every parameter entry,
// compared against the analytic gradient tables.
inline GradCheck check_pair_loss(ModelParams params, const Corpus& corpus, VertexId i, VertexId j,
                                 const TermNegatives& negs, double weight, const DropoutMasks* masks) {
  Gradients grads(params);
  pair_loss(i, j, negs, weight, params, corpus, masks, &grads);
  const double eps = 1e-5;
  GradCheck out;
  auto sweep = [&](Matrix& table, const Matrix& analytic, const char* name) {
    for (std::size_t k = 0; k < table.size(); ++k) {
      const double saved = table.data()[k];
      table.data()[k] = saved + eps;
      const double up = pair_loss(i, j, negs, weight, params, corpus, masks, nullptr);
      table.data()[k] = saved - eps;
      const double down = pair_loss(i, j, negs, weight, params, corpus, masks, nullptr);
      table.data()[k] = saved;
      const double numeric = (up - down) / (2.0 * eps);
      const double err = rel_error(analytic.data()[k], numeric);
      ++out.checked;
      if (err > out.max_rel_err) {
        out.max_rel_err = err;
        char buf[96];
        std::snprintf(buf, sizeof buf, "[%zu] analytic=%.6g numeric=%.6g", k, analytic.data()[k], numeric);
        out.worst = name + std::string(buf);
      }
    }
  };
  sweep(params.structural, grads.structural(), "S");
  sweep(params.words, grads.words(), "Ew");
  sweep(params.w1, grads.w1(), "W1");
  sweep(params.w2, grads.w2(), "W2");
  return out;
}

inline GradCheck check_pair_loss(const ModelParams& params, const Corpus& corpus, VertexId i, VertexId j,
                                 const std::vector<VertexId>& negs, double weight, const DropoutMasks* masks) {
  return check_pair_loss(params, corpus, i, j, TermNegatives::shared(negs), weight, masks);
}

}  // namespace wane::testing
