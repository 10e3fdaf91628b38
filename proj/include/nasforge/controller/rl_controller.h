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

#ifndef NASFORGE_CONTROLLER_RL_CONTROLLER_H_
#define NASFORGE_CONTROLLER_RL_CONTROLLER_H_

#include <vector>

#include "nasforge/controller/controller.h"
#include "nasforge/nn/dense.h"
#include "nasforge/nn/lstm.h"
#include "nasforge/nn/optimizer.h"

namespace nasforge {

struct RlOptions {
  int hidden_size = 64;
  int embedding_size = 16;
  double learning_rate = 1e-3;
  double entropy_weight = 0.01;
  double baseline_decay = 0.9;
};

// Autoregressive LSTM policy trained with REINFORCE.
//
// Step t feeds a learned embedding of the decision taken at t - 1 (a learned
// start vector at t = 0) and emits logits for position t through a
// per-position linear head.
class RlController : public Controller {
 public:
  RlController(std::shared_ptr<const SearchSpace> space, std::shared_ptr<Rng> rng,
               RlOptions options);

  std::string type_name() const override { return "rl"; }

  // Per-position probabilities with the given decisions fed back.
  std::vector<std::vector<double>> DecisionProbs(const Genotype& genotype) const;
  // Sum over positions of log pi(genotype[t] | prefix).
  double LogProb(const Genotype& genotype) const;

  // Gradient of the loss -sum_r [(R_r - b) sum_t log pi + w sum_t H_t],
  // averaged over `rollouts`, with b the current baseline. Aligned with
  // Parameters().
  std::vector<nn::Tensor2> PolicyGradient(
      std::span<const DiscreteRollout> rollouts) const;
  std::vector<nn::Tensor2*> Parameters();

  double baseline() const { return baseline_; }
  const RlOptions& options() const { return options_; }
  // Index in Parameters() of the bias of the head for `position`.
  size_t HeadBiasIndex(size_t position) const;

 protected:
  std::vector<DiscreteRollout> SampleExplore(int n) override;
  // Greedy argmax decoding.
  std::vector<DiscreteRollout> SampleDerive(int n) const override;
  StepStats DoStep(std::span<const DiscreteRollout> rollouts) override;
  void SaveExtra(nn::TensorList& out) const override;
  void LoadExtra(const nn::TensorList& in) override;

 private:
  struct Trace;
  // Runs the policy; samples when `rng` is set, follows `forced` when it is
  // non-empty, else takes the argmax.
  Trace Run(const Genotype* forced, Rng* rng) const;
  nn::Tensor2 StepInput(size_t t, int previous) const;

  RlOptions options_;
  nn::LstmParams lstm_;
  nn::Tensor2 start_;                     // 1 x embedding
  std::vector<nn::Tensor2> embeddings_;   // per position: cardinality x embedding
  std::vector<nn::DenseLayer> heads_;     // per position: hidden -> cardinality
  nn::Optimizer optimizer_;
  double baseline_ = 0.0;
};

}  // namespace nasforge

#endif  // NASFORGE_CONTROLLER_RL_CONTROLLER_H_
