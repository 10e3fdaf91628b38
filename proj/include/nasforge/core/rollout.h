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

#ifndef NASFORGE_CORE_ROLLOUT_H_
#define NASFORGE_CORE_ROLLOUT_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nasforge {

// Ordered integer decisions; position i ranges over [0, cardinality(i)).
using Genotype = std::vector<int>;

// Opaque handle to an assembled candidate network.
class CandidateHandle {
 public:
  virtual ~CandidateHandle() = default;
};

inline constexpr char kRewardKey[] = "reward";

// The object passed between controller, weights manager, evaluator and
// objective. `perf` gains "reward" once evaluated.
struct DiscreteRollout {
  Genotype genotype;
  std::shared_ptr<CandidateHandle> candidate;
  std::map<std::string, double> perf;

  bool HasReward() const { return perf.count(kRewardKey) > 0; }
  // Throws Error when the rollout has not been evaluated.
  double reward() const;
};

// Per-decision logits; probabilities are derived by softmax.
struct DifferentiableRollout {
  std::vector<std::vector<double>> logits;

  std::vector<std::vector<double>> Probs() const;
};

// Argmax per decision, ties to the lowest index.
DiscreteRollout Discretize(const DifferentiableRollout& rollout);

}  // namespace nasforge

#endif  // NASFORGE_CORE_ROLLOUT_H_
