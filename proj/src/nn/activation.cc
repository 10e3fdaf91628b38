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

#include "nasforge/nn/activation.h"

#include <cmath>

namespace nasforge::nn {

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kIdentity:
      return "identity";
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kSigmoid:
      return "sigmoid";
  }
  return "?";
}

std::optional<Activation> ParseActivation(std::string_view name) {
  for (Activation a : {Activation::kIdentity, Activation::kRelu,
                       Activation::kTanh, Activation::kSigmoid}) {
    if (ActivationName(a) == name) return a;
  }
  return std::nullopt;
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Apply(Activation activation, double pre) {
  switch (activation) {
    case Activation::kIdentity:
      return pre;
    case Activation::kRelu:
      return pre > 0 ? pre : 0.0;
    case Activation::kTanh:
      return std::tanh(pre);
    case Activation::kSigmoid:
      return Sigmoid(pre);
  }
  return pre;
}

double Derivative(Activation activation, double pre, double out) {
  switch (activation) {
    case Activation::kIdentity:
      return 1.0;
    case Activation::kRelu:
      return pre > 0 ? 1.0 : 0.0;
    case Activation::kTanh:
      return 1.0 - out * out;
    case Activation::kSigmoid:
      return out * (1.0 - out);
  }
  return 1.0;
}

Tensor2 Apply(Activation activation, const Tensor2& pre) {
  Tensor2 out = pre;
  for (size_t i = 0; i < out.size(); ++i) out[i] = Apply(activation, pre[i]);
  return out;
}

}  // namespace nasforge::nn
