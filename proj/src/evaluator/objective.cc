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

#include "nasforge/evaluator/objective.h"

#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge {

Objective::Objective(std::map<std::string, double> weights,
                     std::map<std::string, double> constraints, double penalty)
    : weights_(std::move(weights)),
      constraints_(std::move(constraints)),
      penalty_(penalty) {
  if (weights_.count(kRewardKey) || constraints_.count(kRewardKey)) {
    throw ConfigError("objective: 'reward' cannot be weighted or constrained");
  }
  for (const auto& [name, value] : weights_) {
    if (!std::isfinite(value)) throw ConfigError("objective: non-finite weight for " + name);
  }
}

bool Objective::Violates(const std::map<std::string, double>& perf) const {
  for (const auto& [metric, bound] : constraints_) {
    auto it = perf.find(metric);
    if (it != perf.end() && it->second > bound) return true;
  }
  return false;
}

double Objective::Reward(const std::map<std::string, double>& perf) const {
  if (Violates(perf)) return penalty_;
  double reward = 0.0;
  for (const auto& [metric, coefficient] : weights_) {
    auto it = perf.find(metric);
    if (it != perf.end()) reward += coefficient * it->second;
  }
  return reward;
}

void Objective::Apply(DiscreteRollout& rollout) const {
  rollout.perf.erase(kRewardKey);
  rollout.perf[kRewardKey] = Reward(rollout.perf);
}

}  // namespace nasforge
