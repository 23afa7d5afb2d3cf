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

#include "wane/trainer.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <thread>

#include "wane/adam.h"
#include "wane/errors.h"

namespace wane {

void TrainConfig::validate() const {
  model.validate();
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning rate must be positive");
  if (batch_size == 0) throw ConfigError("batch size must be at least 1");
  if (negatives == 0) throw ConfigError("K must be at least 1");
  if (!allow_any_k && negatives != 1 && negatives != 3 && negatives != 5) {
    throw ConfigError("K must be 1, 3 or 5 (pass --allow-any-k to override)");
  }
  if (!(keep_prob > 0.0 && keep_prob <= 1.0)) throw ConfigError("dropout keep probability must lie in (0, 1]");
  if (epochs == 0 && max_steps == 0) throw ConfigError("need at least one epoch or step");
  if (max_len == 0) throw ConfigError("max_len must be at least 1");
  if (threads == 0) throw ConfigError("threads must be at least 1");
}

std::string TrainConfig::echo() const {
  std::ostringstream os;
  os.precision(17);
  os << "mode=" << to_string(model.mode) << "\n"
     << "align=" << to_string(model.align) << "\n"
     << "agg=" << to_string(model.agg) << "\n"
     << "struct_dim=" << model.struct_dim << "\n"
     << "alpha1=" << model.alpha[0] << "\n"
     << "alpha2=" << model.alpha[1] << "\n"
     << "alpha3=" << model.alpha[2] << "\n"
     << "learning_rate=" << learning_rate << "\n"
     << "batch_size=" << batch_size << "\n"
     << "K=" << negatives << "\n"
     << "negatives_per_term=" << (negatives_per_term ? 1 : 0) << "\n"
     << "keep_prob=" << keep_prob << "\n"
     << "epochs=" << epochs << "\n"
     << "max_steps=" << max_steps << "\n"
     << "early_stop=" << (early_stop ? 1 : 0) << "\n"
     << "seed=" << seed << "\n"
     << "max_len=" << max_len << "\n"
     << "lazy_adam=" << (lazy_adam ? 1 : 0) << "\n";
  return os.str();
}

void TrainLog::write_tsv(std::ostream& out) const {
  out << "step\tmean_loss\n";
  const auto precision = out.precision(10);
  for (std::size_t s = 0; s < step_loss.size(); ++s) out << s + 1 << '\t' << step_loss[s] << '\n';
  out.precision(precision);
}

namespace {

// One edge evaluated in both directions: its negative sets (one shared set,
// or four terms per direction) and a mask seed.
struct EdgeSample {
  VertexId u, v;
  double weight;
  std::array<std::vector<VertexId>, 8> sets;  // only sets[0] when shared
  bool per_term;
  std::uint64_t mask_seed;

  TermNegatives direction(std::size_t d) const {
    if (!per_term) return TermNegatives::shared(sets[0]);
    TermNegatives t;
    for (std::size_t k = 0; k < 4; ++k) t.terms[k] = sets[4 * d + k];
    return t;
  }
};

std::vector<VertexId> draw_negatives(const AliasSampler& sampler, std::size_t k, VertexId i,
                                     VertexId j, Rng& rng) {
  std::vector<VertexId> out;
  out.reserve(k);
  std::size_t attempts = 0;
  while (out.size() < k) {
    const auto v = static_cast<VertexId>(sampler.sample(rng));
    if (v != i && v != j) {
      out.push_back(v);
    } else if (++attempts > 1000 * k) {
      throw DataError("negative sampling: no vertex other than the edge endpoints has positive degree");
    }
  }
  return out;
}

double evaluate(const EdgeSample& s, const ModelParams& params, const Corpus& corpus, double keep_prob,
                Gradients& grads) {
  const TermNegatives uv = s.direction(0), vu = s.direction(1);
  if (keep_prob < 1.0 && params.config.uses_text()) {
    Rng rng(s.mask_seed);
    std::vector<VertexId> vertices{s.u, s.v};
    for (const auto& set : s.sets) vertices.insert(vertices.end(), set.begin(), set.end());
    const DropoutMasks masks =
        DropoutMasks::sample(keep_prob, vertices, corpus, params.config.word_dim(), rng);
    return edge_loss(s.u, s.v, uv, vu, s.weight, params, corpus, &masks, &grads);
  }
  return edge_loss(s.u, s.v, uv, vu, s.weight, params, corpus, nullptr, &grads);
}

}  // namespace

TrainResult train(const TrainConfig& config, const Graph& g, const Corpus& corpus,
                  const EpochCallback& on_epoch) {
  config.validate();
  Rng init_rng(config.seed);
  ModelParams params = init_params(config.model, g.num_vertices(), corpus.vocab.size(), init_rng);
  return train_from(std::move(params), config, g, corpus, on_epoch);
}

TrainResult train_from(ModelParams params, const TrainConfig& config, const Graph& g,
                       const Corpus& corpus, const EpochCallback& on_epoch) {
  config.validate();
  if (corpus.num_vertices() != g.num_vertices()) {
    throw DataError("graph has " + std::to_string(g.num_vertices()) + " vertices but the corpus has " +
                    std::to_string(corpus.num_vertices()));
  }
  if (params.num_vertices() != g.num_vertices() || params.vocab_size() != corpus.vocab.size()) {
    throw DataError("parameter tables do not match the graph/corpus sizes");
  }
  const EdgeSampler edge_sampler(g);
  const AliasSampler noise = build_negative_sampler(g);
  AdamOptimizer adam(params, AdamConfig{config.learning_rate, 0.9, 0.999, 1e-8, config.lazy_adam});
  // Separate stream from initialisation so changing the init never shifts batches.
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  const std::size_t steps_per_epoch =
      std::max<std::size_t>(1, (g.num_edges() + config.batch_size - 1) / config.batch_size);
  const std::size_t total_steps =
      config.max_steps > 0 ? config.max_steps : config.epochs * steps_per_epoch;
  const std::size_t n_threads = std::max<std::size_t>(1, config.threads);

  std::vector<Gradients> thread_grads;
  for (std::size_t t = 0; t < n_threads; ++t) thread_grads.emplace_back(params);
  Gradients& total = thread_grads[0];

  TrainResult result;
  double epoch_sum = 0.0;
  std::size_t epoch_steps = 0;
  std::vector<EdgeSample> samples;
  for (std::size_t step = 0; step < total_steps; ++step) {
    // Serial phase: all randomness is drawn here in a fixed order.
    samples.clear();
    for (const Edge& e : edge_sampler.sample_batch(config.batch_size, rng)) {
      EdgeSample sample{e.u, e.v, e.weight, {}, config.negatives_per_term, 0};
      if (config.negatives_per_term) {
        for (auto& set : sample.sets) set = draw_negatives(noise, config.negatives, e.u, e.v, rng);
      } else {
        sample.sets[0] = draw_negatives(noise, config.negatives, e.u, e.v, rng);
      }
      sample.mask_seed = rng();
      samples.push_back(std::move(sample));
    }

    std::vector<double> losses(samples.size(), 0.0);
    for (auto& gr : thread_grads) gr.clear();
    if (n_threads == 1) {
      for (std::size_t s = 0; s < samples.size(); ++s)
        losses[s] = evaluate(samples[s], params, corpus, config.keep_prob, total);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(n_threads);
      auto worker = [&](std::size_t t) {
        try {
          if (config.deterministic) {
            // Static contiguous chunks, reduced below in thread order.
            const std::size_t lo = samples.size() * t / n_threads;
            const std::size_t hi = samples.size() * (t + 1) / n_threads;
            for (std::size_t s = lo; s < hi; ++s)
              losses[s] = evaluate(samples[s], params, corpus, config.keep_prob, thread_grads[t]);
          } else {
            for (std::size_t s = next++; s < samples.size(); s = next++)
              losses[s] = evaluate(samples[s], params, corpus, config.keep_prob, thread_grads[t]);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      };
      std::vector<std::thread> pool;
      for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker, t);
      worker(0);
      for (auto& th : pool) th.join();
      for (auto& err : errors)
        if (err) std::rethrow_exception(err);
      for (std::size_t t = 1; t < n_threads; ++t) total.add(thread_grads[t]);
    }

    double batch_loss = 0.0;
    for (double l : losses) batch_loss += l;
    if (!std::isfinite(batch_loss)) {
      std::ostringstream os;
      os << "non-finite loss at step " << step + 1;
      for (std::size_t s = 0; s < losses.size(); ++s) {
        if (!std::isfinite(losses[s])) {
          os << " (first bad edge " << samples[s].u << "-" << samples[s].v << ")";
          break;
        }
      }
      throw NumericError(os.str());
    }
    total.scale(1.0 / static_cast<double>(config.batch_size));
    adam.step(params, total);

    const double mean = batch_loss / static_cast<double>(config.batch_size);
    result.log.step_loss.push_back(mean);
    epoch_sum += mean;
    ++epoch_steps;
    if (epoch_steps == steps_per_epoch || step + 1 == total_steps) {
      const double epoch_mean = epoch_sum / static_cast<double>(epoch_steps);
      result.log.epoch_loss.push_back(epoch_mean);
      if (on_epoch) on_epoch(result.log.epoch_loss.size() - 1, epoch_mean);
      epoch_sum = 0.0;
      epoch_steps = 0;
      const auto& hist = result.log.epoch_loss;
      if (config.early_stop && config.max_steps == 0 && hist.size() > 10) {
        const double before = hist[hist.size() - 11];
        const double now = hist.back();
        if ((before - now) / std::abs(before) < 1e-4) {
          result.log.stopped_early = true;
          break;
        }
      }
    }
  }
  result.params = std::move(params);
  return result;
}

}  // namespace wane
