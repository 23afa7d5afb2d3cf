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

#include <cstdint>

#include "wane/model.h"

namespace wane {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Lazy mode only updates moments (and parameters) of embedding rows that
  // received a gradient this step; W1/W2 are always updated densely.
  bool lazy = true;
};

class AdamOptimizer {
 public:
  AdamOptimizer(const ModelParams& params, AdamConfig config);

  void step(ModelParams& params, const Gradients& grads);
  std::uint64_t steps() const { return step_; }

 private:
  struct Moments {
    Matrix m, v;
  };
  void update_row(std::span<double> param, std::span<const double> grad, std::span<double> m,
                  std::span<double> v) const;

  AdamConfig config_;
  std::uint64_t step_ = 0;
  double correction1_ = 1.0;
  double correction2_ = 1.0;
  Moments structural_, words_, w1_, w2_;
};

}  // namespace wane
