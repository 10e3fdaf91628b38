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

#ifndef NASFORGE_EVALUATOR_OBJECTIVE_H_
#define NASFORGE_EVALUATOR_OBJECTIVE_H_

#include <map>
#include <string>

#include "nasforge/core/component.h"
#include "nasforge/core/rollout.h"

namespace nasforge {

// reward = sum of coefficient * metric over the weighted metrics present in
// perf; any violated upper-bound constraint forces the penalty instead.
class Objective : public Component {
 public:
  Objective(std::map<std::string, double> weights,
            std::map<std::string, double> constraints, double penalty = -1.0);

  ComponentKind kind() const final { return ComponentKind::kObjective; }

  double Reward(const std::map<std::string, double>& perf) const;
  bool Violates(const std::map<std::string, double>& perf) const;
  // Sets perf["reward"].
  void Apply(DiscreteRollout& rollout) const;

  const std::map<std::string, double>& weights() const { return weights_; }
  const std::map<std::string, double>& constraints() const { return constraints_; }
  double penalty() const { return penalty_; }

 private:
  std::map<std::string, double> weights_;
  std::map<std::string, double> constraints_;
  double penalty_;
};

}  // namespace nasforge

#endif  // NASFORGE_EVALUATOR_OBJECTIVE_H_
