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

#ifndef NASFORGE_NN_MLP_H_
#define NASFORGE_NN_MLP_H_

#include <cstddef>
#include <string>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/nn/dense.h"
#include "nasforge/nn/tensor.h"
#include "nasforge/nn/tensor_io.h"

namespace nasforge::nn {

// Stack of dense layers; hidden layers share one activation, the output
// layer is linear.
class Mlp {
 public:
  struct Tape {
    std::vector<Tensor2> inputs;
    std::vector<DenseLayer::Cache> caches;
  };

  Mlp() = default;
  // sizes = {in, hidden..., out}.
  Mlp(const std::vector<size_t>& sizes, Activation hidden, Rng& rng);
  explicit Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {}

  Tensor2 Forward(const Tensor2& x, Tape* tape = nullptr) const;
  // Gradients are added into `grads`, aligned with Parameters().
  Tensor2 Backward(const Tape& tape, const Tensor2& grad_out,
                   std::vector<Tensor2>* grads) const;

  std::vector<Tensor2*> Parameters();
  std::vector<Tensor2> ZeroGrads() const;
  size_t ParameterCount() const;

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  void Save(const std::string& prefix, TensorList& out) const;
  void Load(const std::string& prefix, const TensorList& in);

 private:
  std::vector<DenseLayer> layers_;
};

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_MLP_H_
