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

#ifndef NASFORGE_CONTROLLER_EVO_CONTROLLER_H_
#define NASFORGE_CONTROLLER_EVO_CONTROLLER_H_

#include <deque>

#include "nasforge/controller/controller.h"

namespace nasforge {

struct EvoOptions {
  int population_size = 50;
  int tournament_size = 10;
};

struct EvoMember {
  Genotype genotype;
  double reward = 0.0;
  int64_t birth = 0;
};

// Aging evolution: tournament parent selection, one mutation per child,
// oldest member evicted once the population is over capacity.
class EvoController : public Controller {
 public:
  EvoController(std::shared_ptr<const SearchSpace> space, std::shared_ptr<Rng> rng,
                EvoOptions options);

  std::string type_name() const override { return "evo"; }
  const std::deque<EvoMember>& population() const { return population_; }
  const EvoOptions& options() const { return options_; }

 protected:
  std::vector<DiscreteRollout> SampleExplore(int n) override;
  StepStats DoStep(std::span<const DiscreteRollout> rollouts) override;
  void SaveExtra(nn::TensorList& out) const override;
  void LoadExtra(const nn::TensorList& in) override;

 private:
  const EvoMember& Tournament();

  EvoOptions options_;
  std::deque<EvoMember> population_;
  int64_t next_birth_ = 0;
};

}  // namespace nasforge

#endif  // NASFORGE_CONTROLLER_EVO_CONTROLLER_H_
