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

#ifndef NASFORGE_CONTROLLER_PREDICTOR_CONTROLLER_H_
#define NASFORGE_CONTROLLER_PREDICTOR_CONTROLLER_H_

#include <deque>
#include <vector>

#include "nasforge/controller/controller.h"
#include "nasforge/hwcost/cost_model.h"
#include "nasforge/nn/mlp.h"
#include "nasforge/nn/optimizer.h"

namespace nasforge {

struct PredictorOptions {
  int candidates = 100;
  int top_k = 5;
  std::vector<size_t> hidden = {32};
  int epochs = 50;
  double learning_rate = 0.01;
};

// Surrogate-guided sampling. Each acquisition round scores `candidates`
// fresh uniform samples (not yet evaluated) with an MLP regressor over the
// one-hot genotype and queues the top_k; explore samples drain the queue.
class PredictorController : public Controller {
 public:
  PredictorController(std::shared_ptr<const SearchSpace> space,
                      std::shared_ptr<Rng> rng, PredictorOptions options);

  std::string type_name() const override { return "predictor"; }

  double Score(const Genotype& genotype) const;
  // Full-batch Adam epochs on the dataset; returns (mse before, mse after).
  FitReport TrainSurrogate(int epochs);
  // Appends without retraining.
  void AddObservation(const Genotype& genotype, double reward);
  size_t dataset_size() const { return targets_.size(); }
  double SurrogateMse() const;
  const PredictorOptions& options() const { return options_; }

 protected:
  std::vector<DiscreteRollout> SampleExplore(int n) override;
  // Surrogate argmax over `candidates` fixed-seed samples.
  std::vector<DiscreteRollout> SampleDerive(int n) const override;
  StepStats DoStep(std::span<const DiscreteRollout> rollouts) override;
  void SaveExtra(nn::TensorList& out) const override;
  void LoadExtra(const nn::TensorList& in) override;

 private:
  void Acquire();

  PredictorOptions options_;
  nn::Mlp surrogate_;
  nn::Optimizer optimizer_;
  std::vector<Genotype> inputs_;
  std::vector<double> targets_;
  std::deque<Genotype> pending_;
};

}  // namespace nasforge

#endif  // NASFORGE_CONTROLLER_PREDICTOR_CONTROLLER_H_
