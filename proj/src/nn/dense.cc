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

#include "nasforge/nn/dense.h"

#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge::nn {

DenseLayer::DenseLayer(size_t in, size_t out, Activation act)
    : weight(out, in), bias(1, out), activation(act) {}

DenseLayer DenseLayer::Initialized(size_t in, size_t out, Activation act,
                                   Rng& rng) {
  DenseLayer layer(in, out, act);
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  for (size_t i = 0; i < layer.weight.size(); ++i) {
    layer.weight[i] = rng.Uniform(-bound, bound);
  }
  for (size_t i = 0; i < layer.bias.size(); ++i) {
    layer.bias[i] = rng.Uniform(-bound, bound);
  }
  return layer;
}

Tensor2 DenseLayer::Forward(const Tensor2& x, Cache* cache) const {
  if (x.cols() != in()) {
    throw ShapeError("DenseLayer::Forward: input " + x.ShapeString() +
                     " does not match weight " + weight.ShapeString());
  }
  Tensor2 pre = MatMulTransB(x, weight);
  AddRowBroadcast(pre, bias);
  Tensor2 out = Apply(activation, pre);
  if (cache != nullptr) {
    cache->pre = std::move(pre);
    cache->out = out;
  }
  return out;
}

Tensor2 DenseLayer::Backward(const Tensor2& x, const Cache& cache,
                             const Tensor2& grad_out, Grads* grads) const {
  CheckSameShape(grad_out, cache.out, "DenseLayer::Backward");
  Tensor2 grad_pre = grad_out;
  if (activation != Activation::kIdentity) {
    for (size_t i = 0; i < grad_pre.size(); ++i) {
      grad_pre[i] *= Derivative(activation, cache.pre[i], cache.out[i]);
    }
  }
  if (grads != nullptr) {
    grads->weight += MatMulTransA(grad_pre, x);
    grads->bias += SumRows(grad_pre);
  }
  return MatMul(grad_pre, weight);
}

DenseLayer::Grads DenseLayer::ZeroGrads() const {
  return {Tensor2(weight.rows(), weight.cols()), Tensor2(1, bias.cols())};
}

}  // namespace nasforge::nn
