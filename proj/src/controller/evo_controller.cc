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

#include "nasforge/controller/evo_controller.h"

#include <algorithm>
#include <numeric>

#include "nasforge/common/error.h"

namespace nasforge {

EvoController::EvoController(std::shared_ptr<const SearchSpace> space,
                             std::shared_ptr<Rng> rng, EvoOptions options)
    : Controller(std::move(space), std::move(rng)), options_(options) {
  if (options_.population_size < 1) {
    throw ConfigError("evo: population_size must be >= 1");
  }
  if (options_.tournament_size < 1) {
    throw ConfigError("evo: tournament_size must be >= 1");
  }
}

const EvoMember& EvoController::Tournament() {
  std::vector<size_t> order(population_.size());
  std::iota(order.begin(), order.end(), 0);
  const size_t s = std::min(order.size(),
                            static_cast<size_t>(options_.tournament_size));
  // Partial Fisher-Yates: the first s entries are a uniform draw without
  // replacement.
  for (size_t i = 0; i < s; ++i) {
    const size_t j = i + static_cast<size_t>(
                             rng().UniformInt(static_cast<int>(order.size() - i)));
    std::swap(order[i], order[j]);
  }
  size_t best = order[0];
  for (size_t i = 1; i < s; ++i) {
    if (population_[order[i]].reward > population_[best].reward) best = order[i];
  }
  return population_[best];
}

std::vector<DiscreteRollout> EvoController::SampleExplore(int n) {
  std::vector<DiscreteRollout> out;
  for (int i = 0; i < n; ++i) {
    if (population_.empty()) {
      out.push_back(UniformRollout());
      continue;
    }
    const EvoMember& parent = Tournament();
    out.push_back(space().Mutate(DiscreteRollout{parent.genotype, nullptr, {}}, rng()));
  }
  return out;
}

StepStats EvoController::DoStep(std::span<const DiscreteRollout> rollouts) {
  double evicted = 0;
  for (const auto& r : rollouts) {
    population_.push_back(EvoMember{r.genotype, r.reward(), next_birth_++});
    while (population_.size() > static_cast<size_t>(options_.population_size)) {
      population_.pop_front();
      evicted += 1;
    }
  }
  return {{"population", static_cast<double>(population_.size())},
          {"evicted", evicted}};
}

void EvoController::SaveExtra(nn::TensorList& out) const {
  std::vector<Genotype> genotypes;
  std::vector<double> rewards;
  std::vector<double> births;
  for (const auto& m : population_) {
    genotypes.push_back(m.genotype);
    rewards.push_back(m.reward);
    births.push_back(static_cast<double>(m.birth));
  }
  SaveGenotypes("evo.members", genotypes, space().decision_count(), out);
  out.Add("evo.rewards", nn::Tensor2(1, rewards.size(), rewards));
  out.Add("evo.births", nn::Tensor2(1, births.size(), births));
  out.AddScalar("evo.next_birth", static_cast<double>(next_birth_));
}

void EvoController::LoadExtra(const nn::TensorList& in) {
  std::vector<Genotype> genotypes =
      LoadGenotypes("evo.members", space().decision_count(), in);
  const nn::Tensor2& rewards = in.Get("evo.rewards", 1, genotypes.size());
  const nn::Tensor2& births = in.Get("evo.births", 1, genotypes.size());
  if (genotypes.size() > static_cast<size_t>(options_.population_size)) {
    throw CheckpointError("evo: population exceeds capacity");
  }
  std::deque<EvoMember> population;
  for (size_t i = 0; i < genotypes.size(); ++i) {
    if (!space().IsValid(genotypes[i])) {
      throw CheckpointError("evo: invalid member genotype");
    }
    population.push_back(EvoMember{std::move(genotypes[i]), rewards[i],
                                   static_cast<int64_t>(births[i])});
  }
  next_birth_ = static_cast<int64_t>(in.GetScalar("evo.next_birth"));
  population_ = std::move(population);
}

}  // namespace nasforge
