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

#ifndef NASFORGE_EVALUATOR_DATASET_H_
#define NASFORGE_EVALUATOR_DATASET_H_

#include <cstdint>

#include "nasforge/common/rng.h"
#include "nasforge/core/component.h"
#include "nasforge/nn/tensor.h"

namespace nasforge {

struct Batch {
  nn::Tensor2 x;
  nn::Tensor2 y;
};

class Dataset : public Component {
 public:
  ComponentKind kind() const final { return ComponentKind::kDataset; }
  virtual std::string type_name() const = 0;
};

struct SyntheticRegressionOptions {
  int input_dim = 4;
  int output_dim = 1;
  int batch_size = 32;
  int eval_size = 256;
  uint64_t seed = 0;
};

// y = sin(x W^T) with x ~ U(-1, 1)^d and a fixed seed-derived W whose
// entries are U(-1, 1). The held-out batch is fixed by the seed.
class SyntheticRegression : public Dataset {
 public:
  explicit SyntheticRegression(SyntheticRegressionOptions options);

  std::string type_name() const override { return "synthetic_regression"; }
  const SyntheticRegressionOptions& options() const { return options_; }
  int input_dim() const { return options_.input_dim; }
  int output_dim() const { return options_.output_dim; }
  const nn::Tensor2& weight() const { return weight_; }

  nn::Tensor2 Target(const nn::Tensor2& x) const;
  Batch MakeBatch(int n, Rng& rng) const;
  Batch TrainBatch(Rng& rng) const { return MakeBatch(options_.batch_size, rng); }
  const Batch& EvalBatch() const { return eval_; }
  // Mean over outputs of the held-out target variance.
  double EvalTargetVariance() const { return eval_variance_; }

 private:
  SyntheticRegressionOptions options_;
  nn::Tensor2 weight_;
  Batch eval_;
  double eval_variance_ = 1.0;
};

}  // namespace nasforge

#endif  // NASFORGE_EVALUATOR_DATASET_H_
