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

#include "nasforge/core/rollout.h"

#include "nasforge/common/error.h"
#include "nasforge/nn/loss.h"

namespace nasforge {

double DiscreteRollout::reward() const {
  auto it = perf.find(kRewardKey);
  if (it == perf.end()) throw Error("rollout has no reward (not evaluated)");
  return it->second;
}

std::vector<std::vector<double>> DifferentiableRollout::Probs() const {
  std::vector<std::vector<double>> out;
  out.reserve(logits.size());
  for (const auto& row : logits) out.push_back(nn::Softmax(row));
  return out;
}

DiscreteRollout Discretize(const DifferentiableRollout& rollout) {
  DiscreteRollout out;
  // Softmax is monotone, so the argmax of the logits is the argmax of probs.
  for (const auto& row : rollout.logits) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(row.size()); ++i) {
      if (row[i] > row[best]) best = i;
    }
    out.genotype.push_back(best);
  }
  return out;
}

}  // namespace nasforge
