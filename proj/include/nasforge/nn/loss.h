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

#ifndef NASFORGE_NN_LOSS_H_
#define NASFORGE_NN_LOSS_H_

#include <span>
#include <vector>

#include "nasforge/nn/tensor.h"

namespace nasforge::nn {

// Mean of squared differences over all elements. `grad`, if given,
// receives dL/dpred.
double Mse(const Tensor2& pred, const Tensor2& target, Tensor2* grad = nullptr);

// Max-subtracted softmax.
std::vector<double> Softmax(std::span<const double> logits);
std::vector<double> LogSoftmax(std::span<const double> logits);

// -log softmax(logits)[label]. `grad` receives softmax - onehot(label).
double SoftmaxCrossEntropy(std::span<const double> logits, int label,
                           std::vector<double>* grad = nullptr);

// Entropy of softmax(logits); `grad` receives dH/dlogits.
double SoftmaxEntropy(std::span<const double> logits,
                      std::vector<double>* grad = nullptr);

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_LOSS_H_
