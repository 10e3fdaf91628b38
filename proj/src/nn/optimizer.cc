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

#include "nasforge/nn/optimizer.h"

#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge::nn {

Optimizer::Optimizer(OptimizerKind kind, double learning_rate)
    : kind_(kind), learning_rate_(learning_rate) {}

void Optimizer::Step(std::span<Tensor2* const> params,
                     std::span<const Tensor2> grads) {
  if (params.size() != grads.size()) {
    throw ShapeError("Optimizer::Step: " + std::to_string(params.size()) +
                     " parameters but " + std::to_string(grads.size()) +
                     " gradients");
  }
  for (size_t i = 0; i < params.size(); ++i) {
    CheckSameShape(*params[i], grads[i], "Optimizer::Step");
    if (!grads[i].AllFinite()) {
      throw NumericError("Optimizer::Step: non-finite gradient for parameter " +
                         std::to_string(i));
    }
  }
  if (kind_ == OptimizerKind::kSgd) {
    for (size_t i = 0; i < params.size(); ++i) {
      Tensor2& p = *params[i];
      for (size_t k = 0; k < p.size(); ++k) p[k] -= learning_rate_ * grads[i][k];
    }
    ++step_count_;
    return;
  }
  if (first_moment_.empty()) {
    for (const auto& g : grads) {
      first_moment_.emplace_back(g.rows(), g.cols());
      second_moment_.emplace_back(g.rows(), g.cols());
    }
  } else if (first_moment_.size() != params.size()) {
    throw ShapeError("Optimizer::Step: parameter list changed between steps");
  }
  ++step_count_;
  const double t = static_cast<double>(step_count_);
  const double correction1 = 1.0 - std::pow(kBeta1, t);
  const double correction2 = 1.0 - std::pow(kBeta2, t);
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor2& p = *params[i];
    Tensor2& m = first_moment_[i];
    Tensor2& v = second_moment_[i];
    CheckSameShape(p, m, "Optimizer::Step(moments)");
    for (size_t k = 0; k < p.size(); ++k) {
      const double g = grads[i][k];
      m[k] = kBeta1 * m[k] + (1.0 - kBeta1) * g;
      v[k] = kBeta2 * v[k] + (1.0 - kBeta2) * g * g;
      const double m_hat = m[k] / correction1;
      const double v_hat = v[k] / correction2;
      p[k] -= learning_rate_ * m_hat / (std::sqrt(v_hat) + kEpsilon);
    }
  }
}

void Optimizer::Save(const std::string& prefix, TensorList& out) const {
  out.AddScalar(prefix + "kind", kind_ == OptimizerKind::kSgd ? 0.0 : 1.0);
  out.AddScalar(prefix + "lr", learning_rate_);
  out.AddScalar(prefix + "step", static_cast<double>(step_count_));
  out.AddScalar(prefix + "moments", static_cast<double>(first_moment_.size()));
  for (size_t i = 0; i < first_moment_.size(); ++i) {
    out.Add(prefix + "m" + std::to_string(i), first_moment_[i]);
    out.Add(prefix + "v" + std::to_string(i), second_moment_[i]);
  }
}

void Optimizer::Load(const std::string& prefix, const TensorList& in) {
  Optimizer loaded(in.GetScalar(prefix + "kind") == 0.0 ? OptimizerKind::kSgd
                                                        : OptimizerKind::kAdam,
                   in.GetScalar(prefix + "lr"));
  loaded.step_count_ = static_cast<int64_t>(in.GetScalar(prefix + "step"));
  const auto count = static_cast<size_t>(in.GetScalar(prefix + "moments"));
  for (size_t i = 0; i < count; ++i) {
    loaded.first_moment_.push_back(in.Get(prefix + "m" + std::to_string(i)));
    loaded.second_moment_.push_back(in.Get(prefix + "v" + std::to_string(i)));
  }
  *this = std::move(loaded);
}

}  // namespace nasforge::nn
