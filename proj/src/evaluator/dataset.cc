// Copyright 2026 The nasforge Authors.
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

#include "nasforge/evaluator/dataset.h"

#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge {

SyntheticRegression::SyntheticRegression(SyntheticRegressionOptions options)
    : options_(options) {
  if (options_.input_dim < 1 || options_.output_dim < 1 ||
      options_.batch_size < 1 || options_.eval_size < 2) {
    throw ConfigError(
        "synthetic_regression: dimensions and batch sizes must be positive "
        "(eval_size >= 2)");
  }
  Rng weight_rng(Mix64(options_.seed ^ 0x3E16A7ULL));
  weight_ = nn::Tensor2(static_cast<size_t>(options_.output_dim),
                        static_cast<size_t>(options_.input_dim));
  for (size_t i = 0; i < weight_.size(); ++i) weight_[i] = weight_rng.Uniform(-1, 1);
  Rng eval_rng(Mix64(options_.seed ^ 0xE7A1ULL));
  eval_ = MakeBatch(options_.eval_size, eval_rng);
  double variance = 0.0;
  const auto n = static_cast<double>(eval_.y.rows());
  for (size_t c = 0; c < eval_.y.cols(); ++c) {
    double mean = 0.0;
    for (size_t r = 0; r < eval_.y.rows(); ++r) mean += eval_.y(r, c);
    mean /= n;
    double v = 0.0;
    for (size_t r = 0; r < eval_.y.rows(); ++r) {
      v += (eval_.y(r, c) - mean) * (eval_.y(r, c) - mean);
    }
    variance += v / n;
  }
  variance /= static_cast<double>(eval_.y.cols());
  eval_variance_ = variance > 1e-12 ? variance : 1.0;
}

nn::Tensor2 SyntheticRegression::Target(const nn::Tensor2& x) const {
  nn::Tensor2 y = nn::MatMulTransB(x, weight_);
  for (size_t i = 0; i < y.size(); ++i) y[i] = std::sin(y[i]);
  return y;
}

Batch SyntheticRegression::MakeBatch(int n, Rng& rng) const {
  nn::Tensor2 x(static_cast<size_t>(n), static_cast<size_t>(options_.input_dim));
  for (size_t i = 0; i < x.size(); ++i) x[i] = rng.Uniform(-1, 1);
  nn::Tensor2 y = Target(x);
  return {std::move(x), std::move(y)};
}

}  // namespace nasforge
