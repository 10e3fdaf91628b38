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

#ifndef NASFORGE_NN_DENSE_H_
#define NASFORGE_NN_DENSE_H_

#include <cstddef>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/nn/activation.h"
#include "nasforge/nn/tensor.h"

namespace nasforge::nn {

// y = act(x W^T + b), weight is (out x in), bias is (1 x out).
class DenseLayer {
 public:
  struct Cache {
    Tensor2 pre;
    Tensor2 out;
  };
  struct Grads {
    Tensor2 weight;
    Tensor2 bias;
  };

  DenseLayer() = default;
  DenseLayer(size_t in, size_t out, Activation activation);
  // Weights and bias uniform in +-1/sqrt(in).
  static DenseLayer Initialized(size_t in, size_t out, Activation activation,
                                Rng& rng);

  size_t in() const { return weight.cols(); }
  size_t out() const { return weight.rows(); }

  Tensor2 Forward(const Tensor2& x, Cache* cache = nullptr) const;
  // Returns grad wrt x; parameter gradients are added into `grads`.
  Tensor2 Backward(const Tensor2& x, const Cache& cache,
                   const Tensor2& grad_out, Grads* grads) const;
  Grads ZeroGrads() const;

  Tensor2 weight;
  Tensor2 bias;
  Activation activation = Activation::kIdentity;
};

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_DENSE_H_
