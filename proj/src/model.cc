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

#include "wane/model.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "wane/errors.h"

namespace wane {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kAverage: return "wane";
    case Mode::kWordByContext: return "wane-wc";
    case Mode::kWordByWord: return "wane-ww";
  }
  return "?";
}

std::string_view to_string(AlignFn fn) {
  switch (fn) {
    case AlignFn::kSub: return "sub";
    case AlignFn::kMul: return "mult";
    case AlignFn::kSubMul: return "submult";
  }
  return "?";
}

std::string_view to_string(AggFn fn) { return fn == AggFn::kMax ? "max" : "mean"; }

Mode parse_mode(std::string_view s) {
  if (s == "wane") return Mode::kAverage;
  if (s == "wane-wc") return Mode::kWordByContext;
  if (s == "wane-ww") return Mode::kWordByWord;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected wane|wane-wc|wane-ww)");
}

AlignFn parse_align(std::string_view s) {
  if (s == "sub") return AlignFn::kSub;
  if (s == "mult" || s == "mul") return AlignFn::kMul;
  if (s == "submult" || s == "sub-mult") return AlignFn::kSubMul;
  throw ConfigError("unknown align function '" + std::string(s) + "' (expected sub|mult|submult)");
}

AggFn parse_agg(std::string_view s) {
  if (s == "max") return AggFn::kMax;
  if (s == "mean") return AggFn::kMean;
  throw ConfigError("unknown aggregate function '" + std::string(s) + "' (expected max|mean)");
}

std::size_t ModelConfig::word_dim() const {
  if (mode == Mode::kWordByWord && align == AlignFn::kSubMul) return struct_dim / 2;
  return struct_dim;
}

void ModelConfig::validate() const {
  if (struct_dim == 0) throw ConfigError("structural dimension must be positive");
  if (mode == Mode::kWordByWord && align == AlignFn::kSubMul && struct_dim % 2 != 0) {
    throw ConfigError("submult alignment needs an even structural dimension");
  }
  for (double a : alpha) {
    if (!std::isfinite(a) || a < 0.0) throw ConfigError("loss weights must be finite and >= 0");
  }
}

namespace {

void fill_uniform(Matrix& m, Rng& rng) {
  const double bound = 0.5 / std::sqrt(static_cast<double>(m.cols()));
  for (double& x : m.values()) x = (2.0 * uniform01(rng) - 1.0) * bound;
}

}  // namespace

ModelParams init_params(const ModelConfig& config, std::size_t num_vertices,
                        std::size_t vocab_size, Rng& rng) {
  config.validate();
  ModelParams p;
  p.config = config;
  const std::size_t dw = config.word_dim();
  p.structural = Matrix(num_vertices, config.struct_dim);
  p.words = Matrix(vocab_size, dw);
  fill_uniform(p.structural, rng);
  fill_uniform(p.words, rng);
  if (config.mode == Mode::kWordByContext) {
    p.w1 = Matrix(dw, dw);
    p.w2 = Matrix(dw, dw);
    fill_uniform(p.w1, rng);
    fill_uniform(p.w2, rng);
  }
  return p;
}

Gradients::Gradients(const ModelParams& params)
    : structural_(params.structural.rows(), params.structural.cols()),
      words_(params.words.rows(), params.words.cols()),
      w1_(params.w1.rows(), params.w1.cols()),
      w2_(params.w2.rows(), params.w2.cols()),
      structural_flag_(params.structural.rows(), 0),
      word_flag_(params.words.rows(), 0) {}

std::span<double> Gradients::structural_row(VertexId v) {
  if (!structural_flag_[v]) {
    structural_flag_[v] = 1;
    touched_structural_.push_back(v);
  }
  return structural_.row(v);
}

std::span<double> Gradients::word_row(TokenId t) {
  if (!word_flag_[t]) {
    word_flag_[t] = 1;
    touched_words_.push_back(t);
  }
  return words_.row(t);
}

void Gradients::clear() {
  for (auto v : touched_structural_) {
    std::fill(structural_.row(v).begin(), structural_.row(v).end(), 0.0);
    structural_flag_[v] = 0;
  }
  for (auto t : touched_words_) {
    std::fill(words_.row(t).begin(), words_.row(t).end(), 0.0);
    word_flag_[t] = 0;
  }
  touched_structural_.clear();
  touched_words_.clear();
  w1_.fill(0.0);
  w2_.fill(0.0);
}

void Gradients::scale(double factor) {
  for (auto v : touched_structural_)
    for (double& x : structural_.row(v)) x *= factor;
  for (auto t : touched_words_)
    for (double& x : words_.row(t)) x *= factor;
  for (double& x : w1_.values()) x *= factor;
  for (double& x : w2_.values()) x *= factor;
}

void Gradients::add(const Gradients& other) {
  for (auto v : other.touched_structural_) {
    auto dst = structural_row(v);
    auto src = other.structural_.row(v);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
  for (auto t : other.touched_words_) {
    auto dst = word_row(t);
    auto src = other.words_.row(t);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
  for (std::size_t k = 0; k < w1_.size(); ++k) w1_.data()[k] += other.w1_.data()[k];
  for (std::size_t k = 0; k < w2_.size(); ++k) w2_.data()[k] += other.w2_.data()[k];
}

DropoutMasks DropoutMasks::sample(double keep_prob, std::span<const VertexId> vertices,
                                  const Corpus& corpus, std::size_t word_dim, Rng& rng) {
  if (!(keep_prob > 0.0 && keep_prob <= 1.0)) throw ConfigError("dropout keep probability must lie in (0, 1]");
  DropoutMasks masks;
  if (keep_prob == 1.0) return masks;
  const double scale = 1.0 / keep_prob;
  // Two 32-bit Bernoulli draws per engine output.
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(keep_prob, 32));
  for (VertexId v : vertices) {
    if (masks.find(v)) continue;
    Matrix m(word_dim, corpus.text(v).length());
    auto values = m.values();
    for (std::size_t k = 0; k < values.size(); k += 2) {
      const std::uint64_t bits = rng();
      values[k] = (bits >> 32) < threshold ? scale : 0.0;
      if (k + 1 < values.size()) values[k + 1] = (bits & 0xffffffffULL) < threshold ? scale : 0.0;
    }
    masks.set(v, std::move(m));
  }
  return masks;
}

void DropoutMasks::set(VertexId v, Matrix mask) {
  for (auto& [id, m] : masks_) {
    if (id == v) {
      m = std::move(mask);
      return;
    }
  }
  masks_.emplace_back(v, std::move(mask));
}

const Matrix* DropoutMasks::find(VertexId v) const {
  for (const auto& [id, m] : masks_)
    if (id == v) return &m;
  return nullptr;
}

namespace {

// d_w x M matrix whose column c is the (masked) embedding of the token at
// position order[c] (identity order when `order` is empty).
Matrix gather_words(const TextSequence& seq, const Matrix& words, const Matrix* mask,
                    std::span<const std::size_t> order = {}) {
  if (seq.tokens.empty()) throw DataError("text encoder: empty sequence");
  const std::size_t d = words.cols(), m = seq.length();
  Matrix x(d, m);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t pos = order.empty() ? c : order[c];
    const auto row = words.row(seq.tokens[pos]);
    for (std::size_t r = 0; r < d; ++r) x(r, c) = mask ? row[r] * (*mask)(r, pos) : row[r];
  }
  return x;
}

void scatter_words(const TextSequence& seq, const Matrix& dx, const Matrix* mask, Gradients& grads,
                   std::span<const std::size_t> order = {}) {
  for (std::size_t c = 0; c < seq.length(); ++c) {
    const std::size_t pos = order.empty() ? c : order[c];
    auto row = grads.word_row(seq.tokens[pos]);
    for (std::size_t r = 0; r < row.size(); ++r) {
      row[r] += mask ? dx(r, c) * (*mask)(r, pos) : dx(r, c);
    }
  }
}

// Positions of the context sequence sorted by token id. Summing the context
// in this order makes the encoder exactly invariant to its word order.
std::vector<std::size_t> canonical_order(const TextSequence& seq) {
  std::vector<std::size_t> order(seq.length());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return seq.tokens[x] < seq.tokens[y]; });
  return order;
}

// Forward state of one textual embedding h_{a|b}, kept for the backward pass.
struct Encoding {
  const TextSequence* a = nullptr;
  const TextSequence* b = nullptr;
  const Matrix* mask_a = nullptr;
  const Matrix* mask_b = nullptr;
  Matrix xa, xb;
  std::vector<std::size_t> b_order;
  // word-by-context
  Vector context;
  Matrix tanh_out;
  Vector weights;
  // word-by-word
  Matrix attention;
  Matrix aligned;
  Matrix matching;
  MaxPool pool;
  Vector h;
};

Matrix align_features(const Matrix& xa, const Matrix& aligned, AlignFn fn) {
  const std::size_t d = xa.rows(), m = xa.cols();
  Matrix out(fn == AlignFn::kSubMul ? 2 * d : d, m);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      const double x = xa(r, c), y = aligned(r, c);
      switch (fn) {
        case AlignFn::kSub: out(r, c) = x - y; break;
        case AlignFn::kMul: out(r, c) = x * y; break;
        case AlignFn::kSubMul:
          out(r, c) = x - y;
          out(r + d, c) = x * y;
          break;
      }
    }
  }
  return out;
}

void forward(Encoding& e, const ModelParams& p) {
  const ModelConfig& cfg = p.config;
  e.xa = gather_words(*e.a, p.words, e.mask_a);
  switch (cfg.mode) {
    case Mode::kAverage:
      e.h = meanpool_cols(e.xa);
      return;
    case Mode::kWordByContext: {
      e.b_order = canonical_order(*e.b);
      e.xb = gather_words(*e.b, p.words, e.mask_b, e.b_order);
      const std::size_t d = e.xa.rows(), ma = e.xa.cols();
      e.context.assign(d, 0.0);
      for (std::size_t r = 0; r < d; ++r)
        for (double x : e.xb.row(r)) e.context[r] += x;
      Vector u(d, 0.0);
      for (std::size_t r = 0; r < d; ++r) u[r] = dot(p.w1.row(r), e.context);
      e.tanh_out = matmul(p.w2, e.xa);
      Vector scores(ma, 0.0);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < ma; ++c) {
          double& z = e.tanh_out(r, c);
          z = std::tanh(z + u[r]);
          scores[c] += z;
        }
      }
      const double mx = *std::max_element(scores.begin(), scores.end());
      double total = 0.0;
      Vector unnormalized(ma);
      for (std::size_t c = 0; c < ma; ++c) total += (unnormalized[c] = std::exp(scores[c] - mx));
      // Normalising after the weighted sum makes zero attention reduce to
      // exactly the plain average.
      e.h.assign(d, 0.0);
      for (std::size_t r = 0; r < d; ++r) e.h[r] = dot(e.xa.row(r), unnormalized) / total;
      e.weights.resize(ma);
      for (std::size_t c = 0; c < ma; ++c) e.weights[c] = unnormalized[c] / total;
      return;
    }
    case Mode::kWordByWord: {
      e.b_order = canonical_order(*e.b);
      e.xb = gather_words(*e.b, p.words, e.mask_b, e.b_order);
      e.attention = col_softmax(matmul_tn(e.xb, e.xa));
      e.aligned = matmul(e.xb, e.attention);
      e.matching = align_features(e.xa, e.aligned, cfg.align);
      if (cfg.agg == AggFn::kMax) {
        e.pool = maxpool_cols(e.matching);
        e.h = e.pool.values;
      } else {
        e.h = meanpool_cols(e.matching);
      }
      return;
    }
  }
}

void backward(const Encoding& e, const ModelParams& p, std::span<const double> dh, Gradients& grads) {
  const ModelConfig& cfg = p.config;
  const std::size_t d = e.xa.rows(), ma = e.xa.cols();
  switch (cfg.mode) {
    case Mode::kAverage: {
      scatter_words(*e.a, meanpool_cols_backward(d, ma, dh), e.mask_a, grads);
      return;
    }
    case Mode::kWordByContext: {
      Vector dw(ma, 0.0);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < ma; ++c) dw[c] += e.xa(r, c) * dh[r];
      const double mean = dot(dw, e.weights);
      Matrix dz(d, ma);
      for (std::size_t c = 0; c < ma; ++c) {
        const double ds = e.weights[c] * (dw[c] - mean);
        for (std::size_t r = 0; r < d; ++r) {
          const double t = e.tanh_out(r, c);
          dz(r, c) = ds * (1.0 - t * t);
        }
      }
      Matrix dxa = matmul_tn(p.w2, dz);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < ma; ++c) dxa(r, c) += dh[r] * e.weights[c];
      const Matrix dw2 = matmul_nt(dz, e.xa);
      Matrix& gw1 = grads.w1();
      Matrix& gw2 = grads.w2();
      for (std::size_t k = 0; k < dw2.size(); ++k) gw2.data()[k] += dw2.data()[k];
      Vector du(d, 0.0);
      for (std::size_t r = 0; r < d; ++r)
        for (double x : dz.row(r)) du[r] += x;
      Vector dc(d, 0.0);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
          gw1(r, k) += du[r] * e.context[k];
          dc[k] += p.w1(r, k) * du[r];
        }
      }
      Matrix dxb(d, e.xb.cols());
      for (std::size_t r = 0; r < d; ++r)
        for (double& x : dxb.row(r)) x = dc[r];
      scatter_words(*e.a, dxa, e.mask_a, grads);
      scatter_words(*e.b, dxb, e.mask_b, grads, e.b_order);
      return;
    }
    case Mode::kWordByWord: {
      const Matrix dm = cfg.agg == AggFn::kMax
                            ? maxpool_cols_backward(e.pool, ma, dh)
                            : meanpool_cols_backward(e.matching.rows(), ma, dh);
      Matrix dxa(d, ma), daligned(d, ma);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < ma; ++c) {
          switch (cfg.align) {
            case AlignFn::kSub:
              dxa(r, c) = dm(r, c);
              daligned(r, c) = -dm(r, c);
              break;
            case AlignFn::kMul:
              dxa(r, c) = dm(r, c) * e.aligned(r, c);
              daligned(r, c) = dm(r, c) * e.xa(r, c);
              break;
            case AlignFn::kSubMul:
              dxa(r, c) = dm(r, c) + dm(r + d, c) * e.aligned(r, c);
              daligned(r, c) = -dm(r, c) + dm(r + d, c) * e.xa(r, c);
              break;
          }
        }
      }
      // aligned = xb P, P = softmax(xb^T xa)
      Matrix dxb = matmul_nt(daligned, e.attention);
      const Matrix dattn = matmul_tn(e.xb, daligned);
      const Matrix daff = col_softmax_backward(e.attention, dattn);
      const Matrix dxb_aff = matmul_nt(e.xa, daff);
      for (std::size_t k = 0; k < dxb.size(); ++k) dxb.data()[k] += dxb_aff.data()[k];
      const Matrix dxa_aff = matmul(e.xb, daff);
      for (std::size_t k = 0; k < dxa.size(); ++k) dxa.data()[k] += dxa_aff.data()[k];
      scatter_words(*e.a, dxa, e.mask_a, grads);
      scatter_words(*e.b, dxb, e.mask_b, grads, e.b_order);
      return;
    }
  }
}

Encoding run_encoder(const TextSequence& a, const TextSequence& b, const ModelParams& p,
                     const Matrix* mask_a = nullptr, const Matrix* mask_b = nullptr) {
  Encoding e;
  e.a = &a;
  e.b = &b;
  e.mask_a = mask_a;
  e.mask_b = mask_b;
  forward(e, p);
  return e;
}

// Adds coeff * -w [log s(b.a) + sum_k log s(-b.n_k)] and its gradients.
double add_term(double scale, std::span<const double> b, std::span<const double> a,
                std::span<const std::span<const double>> negs, std::span<double> db,
                std::span<double> da, std::span<const std::span<double>> dnegs) {
  const double pos = dot(b, a);
  double loss = -scale * log_sigmoid(pos);
  const double gpos = -scale * sigmoid(-pos);
  for (std::size_t r = 0; r < b.size(); ++r) {
    da[r] += gpos * b[r];
    db[r] += gpos * a[r];
  }
  for (std::size_t k = 0; k < negs.size(); ++k) {
    const double s = dot(b, negs[k]);
    loss -= scale * log_sigmoid(-s);
    const double gk = scale * sigmoid(s);
    for (std::size_t r = 0; r < b.size(); ++r) {
      dnegs[k][r] += gk * b[r];
      db[r] += gk * negs[k][r];
    }
  }
  return loss;
}

}  // namespace

Vector text_embed_avg(const TextSequence& seq, const ModelParams& params) {
  return meanpool_cols(gather_words(seq, params.words, nullptr));
}

Vector text_embed_wc(const TextSequence& a, const TextSequence& b, const ModelParams& params) {
  if (params.config.mode != Mode::kWordByContext) {
    throw ConfigError("text_embed_wc needs word-by-context parameters");
  }
  return run_encoder(a, b, params).h;
}

WordByWordResult text_embed_ww(const TextSequence& a, const TextSequence& b,
                               const ModelParams& params) {
  if (params.config.mode != Mode::kWordByWord) {
    throw ConfigError("text_embed_ww needs word-by-word parameters");
  }
  Encoding e = run_encoder(a, b, params);
  WordByWordResult out;
  out.h = std::move(e.h);
  out.features.norms.assign(e.matching.cols(), 0.0);
  for (std::size_t r = 0; r < e.matching.rows(); ++r)
    for (std::size_t c = 0; c < e.matching.cols(); ++c)
      out.features.norms[c] += e.matching(r, c) * e.matching(r, c);
  for (double& n : out.features.norms) n = std::sqrt(n);
  out.features.matching = std::move(e.matching);
  out.features.attention = std::move(e.attention);
  return out;
}

Vector encode_text(const TextSequence& a, const TextSequence& b, const ModelParams& params) {
  return run_encoder(a, b, params).h;
}

namespace {

void check_pair(VertexId i, VertexId j, const TermNegatives& negatives, std::size_t n) {
  if (i == j) throw ConfigError("pair_loss: i and j must differ");
  if (i >= n || j >= n) throw DataError("pair_loss: vertex id out of range");
  for (const auto& set : negatives.terms) {
    if (set.empty()) throw ConfigError("pair_loss: need at least one negative sample");
    for (VertexId v : set) {
      if (v == i || v == j) throw ConfigError("pair_loss: negative sample equals an endpoint");
      if (v >= n) throw DataError("pair_loss: negative vertex out of range");
    }
  }
}

const Matrix* mask_of(const DropoutMasks* masks, VertexId v) { return masks ? masks->find(v) : nullptr; }

void accumulate(std::span<double> dst, const Vector& src) {
  for (std::size_t r = 0; r < dst.size(); ++r) dst[r] += src[r];
}

bool same_set(std::span<const VertexId> a, std::span<const VertexId> b) {
  return a.data() == b.data() && a.size() == b.size();
}

// Embeddings of one negative set (structural rows or encodings aligned
// against the context vertex) with their gradient buffers.
struct NegativeBlock {
  std::span<const VertexId> ids;
  std::vector<Encoding> enc;
  std::vector<Vector> grad;
  std::vector<std::span<const double>> view;
  std::vector<std::span<double>> grad_view;

  void bind() {
    for (auto& g : grad) grad_view.emplace_back(g);
  }
};

NegativeBlock structural_block(std::span<const VertexId> ids, const ModelParams& params) {
  NegativeBlock b;
  b.ids = ids;
  b.grad.assign(ids.size(), Vector(params.config.struct_dim, 0.0));
  for (VertexId v : ids) b.view.push_back(params.structural.row(v));
  b.bind();
  return b;
}

NegativeBlock text_block(std::span<const VertexId> ids, VertexId context, const ModelParams& params,
                         const Corpus& corpus, const DropoutMasks* masks) {
  NegativeBlock b;
  b.ids = ids;
  b.enc.reserve(ids.size());
  for (VertexId v : ids) {
    b.enc.push_back(run_encoder(corpus.text(v), corpus.text(context), params, mask_of(masks, v), mask_of(masks, context)));
  }
  for (const auto& e : b.enc) b.view.emplace_back(e.h);
  b.grad.assign(ids.size(), Vector(params.config.text_dim(), 0.0));
  b.bind();
  return b;
}

// Loss of the directed pair (i | j) given the encodings h_{i|j} (t_i) and
// h_{j|i} (t_j), which are null in structure-only mode. Structural and
// negative-text gradients go straight into `grads`; the gradients w.r.t.
// t_i and t_j are added to dt_i and dt_j for the caller to back-propagate.
double directed_loss(VertexId i, VertexId j, const TermNegatives& negatives, double weight,
                     const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                     const Vector* t_i, const Vector* t_j, Vector& dt_i, Vector& dt_j, Gradients* grads) {
  const ModelConfig& cfg = params.config;
  const std::size_t ds = cfg.struct_dim;
  const bool text = t_i != nullptr;
  const auto& sets = negatives.terms;

  // Terms in order s|s, t|t, t|s, s|t; the first and last use structural
  // negatives, the middle two textual ones. Identical sets share a block.
  std::vector<NegativeBlock> blocks;
  blocks.reserve(4);
  std::array<std::size_t, 4> block_of{};
  for (std::size_t t = 0; t < 4; ++t) {
    const bool textual = t == 1 || t == 2;
    if (t > 0 && (!text || cfg.alpha[t - 1] == 0.0)) continue;
    bool found = false;
    for (std::size_t b = 0; b < blocks.size() && !found; ++b) {
      if (same_set(blocks[b].ids, sets[t]) && blocks[b].enc.empty() != textual) {
        block_of[t] = b;
        found = true;
      }
    }
    if (found) continue;
    block_of[t] = blocks.size();
    blocks.push_back(textual ? text_block(sets[t], j, params, corpus, masks) : structural_block(sets[t], params));
  }

  Vector ds_i(ds, 0.0), ds_j(ds, 0.0);
  const auto s_i = params.structural.row(i);
  const auto s_j = params.structural.row(j);
  auto negs = [&](std::size_t t) -> NegativeBlock& { return blocks[block_of[t]]; };

  double loss = add_term(weight, s_j, s_i, negs(0).view, ds_j, ds_i, negs(0).grad_view);
  if (text) {
    if (cfg.alpha[0] != 0.0)
      loss += add_term(weight * cfg.alpha[0], *t_j, *t_i, negs(1).view, dt_j, dt_i, negs(1).grad_view);
    if (cfg.alpha[1] != 0.0)
      loss += add_term(weight * cfg.alpha[1], s_j, *t_i, negs(2).view, ds_j, dt_i, negs(2).grad_view);
    if (cfg.alpha[2] != 0.0)
      loss += add_term(weight * cfg.alpha[2], *t_j, s_i, negs(3).view, dt_j, ds_i, negs(3).grad_view);
  }

  if (grads) {
    accumulate(grads->structural_row(i), ds_i);
    accumulate(grads->structural_row(j), ds_j);
    for (const auto& b : blocks) {
      for (std::size_t k = 0; k < b.ids.size(); ++k) {
        if (b.enc.empty()) {
          accumulate(grads->structural_row(b.ids[k]), b.grad[k]);
        } else {
          backward(b.enc[k], params, b.grad[k], *grads);
        }
      }
    }
  }
  return loss;
}

}  // namespace

double pair_loss(VertexId i, VertexId j, const TermNegatives& negatives, double weight,
                 const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                 Gradients* grads) {
  check_pair(i, j, negatives, params.num_vertices());
  Vector dt_i(params.config.text_dim(), 0.0), dt_j(params.config.text_dim(), 0.0);
  if (!params.config.uses_text()) {
    return directed_loss(i, j, negatives, weight, params, corpus, masks, nullptr, nullptr, dt_i, dt_j, grads);
  }
  const Encoding ij = run_encoder(corpus.text(i), corpus.text(j), params, mask_of(masks, i), mask_of(masks, j));
  const Encoding ji = run_encoder(corpus.text(j), corpus.text(i), params, mask_of(masks, j), mask_of(masks, i));
  const double loss = directed_loss(i, j, negatives, weight, params, corpus, masks, &ij.h, &ji.h, dt_i, dt_j, grads);
  if (grads) {
    backward(ij, params, dt_i, *grads);
    backward(ji, params, dt_j, *grads);
  }
  return loss;
}

double pair_loss(VertexId i, VertexId j, std::span<const VertexId> negatives, double weight,
                 const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                 Gradients* grads) {
  return pair_loss(i, j, TermNegatives::shared(negatives), weight, params, corpus, masks, grads);
}

double edge_loss(VertexId u, VertexId v, const TermNegatives& negatives_uv, const TermNegatives& negatives_vu,
                 double weight, const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks,
                 Gradients* grads) {
  check_pair(u, v, negatives_uv, params.num_vertices());
  check_pair(v, u, negatives_vu, params.num_vertices());
  Vector dt_uv(params.config.text_dim(), 0.0), dt_vu(params.config.text_dim(), 0.0);
  if (!params.config.uses_text()) {
    return directed_loss(u, v, negatives_uv, weight, params, corpus, masks, nullptr, nullptr, dt_uv, dt_vu, grads) +
           directed_loss(v, u, negatives_vu, weight, params, corpus, masks, nullptr, nullptr, dt_vu, dt_uv, grads);
  }
  const Encoding uv = run_encoder(corpus.text(u), corpus.text(v), params, mask_of(masks, u), mask_of(masks, v));
  const Encoding vu = run_encoder(corpus.text(v), corpus.text(u), params, mask_of(masks, v), mask_of(masks, u));
  double loss = directed_loss(u, v, negatives_uv, weight, params, corpus, masks, &uv.h, &vu.h, dt_uv, dt_vu, grads);
  loss += directed_loss(v, u, negatives_vu, weight, params, corpus, masks, &vu.h, &uv.h, dt_vu, dt_uv, grads);
  if (grads) {
    backward(uv, params, dt_uv, *grads);
    backward(vu, params, dt_vu, *grads);
  }
  return loss;
}

double edge_loss(VertexId u, VertexId v, std::span<const VertexId> negatives, double weight,
                 const ModelParams& params, const Corpus& corpus, const DropoutMasks* masks, Gradients* grads) {
  const auto shared = TermNegatives::shared(negatives);
  return edge_loss(u, v, shared, shared, weight, params, corpus, masks, grads);
}

double softmax_conditional(VertexId i, VertexId j, const Matrix& table) {
  if (i >= table.rows() || j >= table.rows()) throw DataError("softmax_conditional: id out of range");
  Vector logits(table.rows());
  for (std::size_t k = 0; k < table.rows(); ++k) logits[k] = dot(table.row(j), table.row(k));
  const double mx = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double l : logits) total += std::exp(l - mx);
  return std::exp(logits[i] - mx) / total;
}

}  // namespace wane
