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

#include "nasforge/controller/sa_controller.h"

#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge {

SaController::SaController(std::shared_ptr<const SearchSpace> space,
                           std::shared_ptr<Rng> rng, SaOptions options)
    : Controller(std::move(space), std::move(rng)),
      options_(options),
      temperature_(options.initial_temperature) {
  if (!(options_.initial_temperature > 0)) {
    throw ConfigError("sa: initial temperature must be > 0");
  }
  if (!(options_.cooling > 0 && options_.cooling < 1)) {
    throw ConfigError("sa: cooling must lie in (0, 1)");
  }
}

double SaController::AcceptProbability(double delta, double temperature) {
  if (delta > 0) return 1.0;
  return std::exp(delta / temperature);
}

std::vector<DiscreteRollout> SaController::SampleExplore(int n) {
  std::vector<DiscreteRollout> out;
  for (int i = 0; i < n; ++i) {
    if (!has_current_) {
      out.push_back(UniformRollout());
    } else {
      out.push_back(space().Mutate(DiscreteRollout{current_.genotype, nullptr, {}},
                                   rng()));
    }
  }
  return out;
}

StepStats SaController::DoStep(std::span<const DiscreteRollout> rollouts) {
  double accepted = 0;
  for (const auto& r : rollouts) {
    const double reward = r.reward();
    bool accept = !has_current_;
    if (!accept) {
      const double delta = reward - current_.reward;
      accept = delta > 0 || rng().Bernoulli(AcceptProbability(delta, temperature_));
    }
    if (accept) {
      current_ = ScoredGenotype{r.genotype, reward};
      has_current_ = true;
      accepted += 1;
    }
    temperature_ *= options_.cooling;
  }
  return {{"accepted", accepted}, {"temperature", temperature_}};
}

void SaController::SaveExtra(nn::TensorList& out) const {
  out.AddScalar("sa.has_current", has_current_ ? 1.0 : 0.0);
  out.AddScalar("sa.temperature", temperature_);
  out.AddScalar("sa.current_reward", current_.reward);
  Genotype g = has_current_ ? current_.genotype
                            : Genotype(space().decision_count(), 0);
  out.AddInts("sa.current", g);
}

void SaController::LoadExtra(const nn::TensorList& in) {
  const bool has = in.GetScalar("sa.has_current") != 0.0;
  const double temperature = in.GetScalar("sa.temperature");
  const double reward = in.GetScalar("sa.current_reward");
  Genotype g = in.GetInts("sa.current");
  if (!space().IsValid(g)) throw CheckpointError("sa: invalid current genotype");
  if (!(temperature > 0)) throw CheckpointError("sa: invalid temperature");
  has_current_ = has;
  temperature_ = temperature;
  current_ = ScoredGenotype{has ? std::move(g) : Genotype{}, reward};
}

}  // namespace nasforge
