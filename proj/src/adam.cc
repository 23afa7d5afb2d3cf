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

#include "wane/adam.h"

#include <cmath>

namespace wane {

namespace {

Matrix zeros_like(const Matrix& m) { return Matrix(m.rows(), m.cols()); }

}  // namespace

AdamOptimizer::AdamOptimizer(const ModelParams& params, AdamConfig config)
    : config_(config),
      structural_{zeros_like(params.structural), zeros_like(params.structural)},
      words_{zeros_like(params.words), zeros_like(params.words)},
      w1_{zeros_like(params.w1), zeros_like(params.w1)},
      w2_{zeros_like(params.w2), zeros_like(params.w2)} {}

void AdamOptimizer::update_row(std::span<double> param, std::span<const double> grad,
                               std::span<double> m, std::span<double> v) const {
  const double b1 = config_.beta1, b2 = config_.beta2;
  for (std::size_t k = 0; k < param.size(); ++k) {
    const double g = grad[k];
    m[k] = b1 * m[k] + (1.0 - b1) * g;
    v[k] = b2 * v[k] + (1.0 - b2) * g * g;
    const double m_hat = m[k] / correction1_;
    const double v_hat = v[k] / correction2_;
    param[k] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

void AdamOptimizer::step(ModelParams& params, const Gradients& grads) {
  ++step_;
  correction1_ = 1.0 - std::pow(config_.beta1, static_cast<double>(step_));
  correction2_ = 1.0 - std::pow(config_.beta2, static_cast<double>(step_));

  auto table = [&](Matrix& param, const Matrix& grad, Moments& mom,
                   const std::vector<std::uint32_t>& touched) {
    if (config_.lazy) {
      for (auto r : touched) update_row(param.row(r), grad.row(r), mom.m.row(r), mom.v.row(r));
    } else {
      update_row(param.values(), grad.values(), mom.m.values(), mom.v.values());
    }
  };
  table(params.structural, grads.structural(), structural_, grads.touched_structural());
  table(params.words, grads.words(), words_, grads.touched_words());
  if (!params.w1.empty()) {
    update_row(params.w1.values(), grads.w1().values(), w1_.m.values(), w1_.v.values());
    update_row(params.w2.values(), grads.w2().values(), w2_.m.values(), w2_.v.values());
  }
}

}  // namespace wane
