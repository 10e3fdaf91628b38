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

#include "nasforge/nn/loss.h"

#include <algorithm>
#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge::nn {

double Mse(const Tensor2& pred, const Tensor2& target, Tensor2* grad) {
  CheckSameShape(pred, target, "Mse");
  if (pred.empty()) throw ShapeError("Mse: empty input");
  const double n = static_cast<double>(pred.size());
  double sum = 0.0;
  if (grad != nullptr) *grad = Tensor2(pred.rows(), pred.cols());
  for (size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    sum += d * d;
    if (grad != nullptr) (*grad)[i] = 2.0 * d / n;
  }
  return sum / n;
}

std::vector<double> Softmax(std::span<const double> logits) {
  if (logits.empty()) throw ShapeError("Softmax: empty input");
  const double max = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - max);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> LogSoftmax(std::span<const double> logits) {
  if (logits.empty()) throw ShapeError("LogSoftmax: empty input");
  const double max = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double z : logits) total += std::exp(z - max);
  const double log_total = max + std::log(total);
  std::vector<double> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - log_total;
  return out;
}

double SoftmaxCrossEntropy(std::span<const double> logits, int label,
                           std::vector<double>* grad) {
  if (label < 0 || static_cast<size_t>(label) >= logits.size()) {
    throw ShapeError("SoftmaxCrossEntropy: label out of range");
  }
  const std::vector<double> log_p = LogSoftmax(logits);
  if (grad != nullptr) {
    grad->resize(logits.size());
    for (size_t i = 0; i < logits.size(); ++i) {
      (*grad)[i] = std::exp(log_p[i]) - (static_cast<int>(i) == label ? 1.0 : 0.0);
    }
  }
  return -log_p[label];
}

double SoftmaxEntropy(std::span<const double> logits,
                      std::vector<double>* grad) {
  const std::vector<double> log_p = LogSoftmax(logits);
  double entropy = 0.0;
  for (double lp : log_p) entropy -= std::exp(lp) * lp;
  if (grad != nullptr) {
    // dH/dz_j = -p_j (log p_j + H)
    grad->resize(logits.size());
    for (size_t j = 0; j < logits.size(); ++j) {
      (*grad)[j] = -std::exp(log_p[j]) * (log_p[j] + entropy);
    }
  }
  return entropy;
}

}  // namespace nasforge::nn
