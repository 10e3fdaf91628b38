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

#ifndef NASFORGE_NN_OPTIMIZER_H_
#define NASFORGE_NN_OPTIMIZER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nasforge/nn/tensor.h"
#include "nasforge/nn/tensor_io.h"

namespace nasforge::nn {

enum class OptimizerKind { kSgd, kAdam };

// Plain SGD or Adam (beta1 0.9, beta2 0.999, eps 1e-8). Moments are
// allocated on the first step and keyed by parameter position, so a given
// optimizer must always be stepped with the same parameter list.
class Optimizer {
 public:
  explicit Optimizer(OptimizerKind kind = OptimizerKind::kAdam,
                     double learning_rate = 1e-3);

  // Throws NumericError, leaving parameters untouched, if any gradient is
  // not finite; ShapeError on mismatched shapes.
  void Step(std::span<Tensor2* const> params, std::span<const Tensor2> grads);

  OptimizerKind kind() const { return kind_; }
  double learning_rate() const { return learning_rate_; }
  void set_learning_rate(double lr) { learning_rate_ = lr; }
  int64_t step_count() const { return step_count_; }

  void Save(const std::string& prefix, TensorList& out) const;
  void Load(const std::string& prefix, const TensorList& in);

  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

 private:
  OptimizerKind kind_;
  double learning_rate_;
  int64_t step_count_ = 0;
  std::vector<Tensor2> first_moment_;
  std::vector<Tensor2> second_moment_;
};

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_OPTIMIZER_H_
