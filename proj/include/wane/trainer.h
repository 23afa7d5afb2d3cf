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
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wane/graph_store.h"
#include "wane/model.h"
#include "wane/text_corpus.h"

namespace wane {

struct TrainConfig {
  ModelConfig model;
  double learning_rate = 1e-3;
  std::size_t batch_size = 128;
  std::size_t negatives = 1;  // K
  bool allow_any_k = false;   // otherwise K must be 1, 3 or 5
  // One negative set per edge and step, shared by both directions and all
  // four loss terms; when set, every term of every direction draws its own.
  bool negatives_per_term = false;
  // Dropout on the word-embedding layer, expressed as a KEEP probability.
  double keep_prob = 0.5;
  std::size_t epochs = 200;
  std::size_t max_steps = 0;  // overrides epochs when non-zero
  // Stop when the epoch loss improves by less than 1e-4 (relative) over 10 epochs.
  bool early_stop = true;
  std::uint64_t seed = 1;
  std::size_t max_len = kDefaultMaxLen;
  std::size_t threads = 1;
  bool deterministic = true;
  bool lazy_adam = true;

  void validate() const;
  // key=value lines covering every field, in a fixed order.
  std::string echo() const;
};

struct TrainLog {
  std::vector<double> step_loss;  // mean loss per edge in each batch
  std::vector<double> epoch_loss;
  bool stopped_early = false;

  void write_tsv(std::ostream& out) const;
};

struct TrainResult {
  ModelParams params;
  TrainLog log;
};

// Called after every epoch with (epoch index, mean epoch loss).
using EpochCallback = std::function<void(std::size_t, double)>;

TrainResult train(const TrainConfig& config, const Graph& g, const Corpus& corpus,
                  const EpochCallback& on_epoch = {});

// Same loop starting from given parameters (their config must match).
TrainResult train_from(ModelParams params, const TrainConfig& config, const Graph& g,
                       const Corpus& corpus, const EpochCallback& on_epoch = {});

}  // namespace wane
