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

#ifndef NASFORGE_CONTROLLER_SA_CONTROLLER_H_
#define NASFORGE_CONTROLLER_SA_CONTROLLER_H_

#include "nasforge/controller/controller.h"

namespace nasforge {

struct SaOptions {
  double initial_temperature = 0.1;
  double cooling = 0.98;
};

// Simulated annealing over single-position mutations of the current state.
class SaController : public Controller {
 public:
  SaController(std::shared_ptr<const SearchSpace> space, std::shared_ptr<Rng> rng,
               SaOptions options);

  std::string type_name() const override { return "sa"; }

  // min(1, exp(delta / temperature)).
  static double AcceptProbability(double delta, double temperature);

  bool has_current() const { return has_current_; }
  const ScoredGenotype& current() const { return current_; }
  double temperature() const { return temperature_; }
  const SaOptions& options() const { return options_; }

 protected:
  std::vector<DiscreteRollout> SampleExplore(int n) override;
  StepStats DoStep(std::span<const DiscreteRollout> rollouts) override;
  void SaveExtra(nn::TensorList& out) const override;
  void LoadExtra(const nn::TensorList& in) override;

 private:
  SaOptions options_;
  bool has_current_ = false;
  ScoredGenotype current_;
  double temperature_;
};

}  // namespace nasforge

#endif  // NASFORGE_CONTROLLER_SA_CONTROLLER_H_
