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

#ifndef NASFORGE_NN_ACTIVATION_H_
#define NASFORGE_NN_ACTIVATION_H_

#include <optional>
#include <string>
#include <string_view>

#include "nasforge/nn/tensor.h"

namespace nasforge::nn {

enum class Activation { kIdentity, kRelu, kTanh, kSigmoid };

std::string_view ActivationName(Activation activation);
std::optional<Activation> ParseActivation(std::string_view name);

double Sigmoid(double x);
double Apply(Activation activation, double pre);
// d act / d pre, given the pre-activation and the activation output.
double Derivative(Activation activation, double pre, double out);

Tensor2 Apply(Activation activation, const Tensor2& pre);

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_ACTIVATION_H_
