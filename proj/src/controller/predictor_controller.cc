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

#include "nasforge/controller/predictor_controller.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "nasforge/common/error.h"
#include "nasforge/nn/loss.h"

namespace nasforge {

using nn::Tensor2;

namespace {

// Indices of `scores` by descending score; earlier index wins ties.
std::vector<size_t> RankDescending(const std::vector<double>& scores) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

PredictorController::PredictorController(std::shared_ptr<const SearchSpace> space,
                                         std::shared_ptr<Rng> rng,
                                         PredictorOptions options)
    : Controller(std::move(space), std::move(rng)),
      options_(std::move(options)),
      optimizer_(nn::OptimizerKind::kAdam, options_.learning_rate) {
  if (options_.candidates < 1) throw ConfigError("predictor: candidates must be >= 1");
  if (options_.top_k < 1 || options_.top_k > options_.candidates) {
    throw ConfigError("predictor: top_k must lie in [1, candidates]");
  }
  if (options_.epochs < 0) throw ConfigError("predictor: epochs must be >= 0");
  std::vector<size_t> sizes = {this->space().OneHotSize()};
  sizes.insert(sizes.end(), options_.hidden.begin(), options_.hidden.end());
  sizes.push_back(1);
  surrogate_ = nn::Mlp(sizes, nn::Activation::kRelu, this->rng());
}

double PredictorController::Score(const Genotype& genotype) const {
  return surrogate_.Forward(Tensor2::Row(space().OneHot(genotype)))[0];
}

void PredictorController::AddObservation(const Genotype& genotype, double reward) {
  space().Validate(genotype);
  inputs_.push_back(space().Canonicalize(genotype));
  targets_.push_back(reward);
}

double PredictorController::SurrogateMse() const {
  if (targets_.empty()) return 0.0;
  Tensor2 x(inputs_.size(), space().OneHotSize());
  for (size_t r = 0; r < inputs_.size(); ++r) {
    const auto row = space().OneHot(inputs_[r]);
    std::copy(row.begin(), row.end(), x.row(r).begin());
  }
  Tensor2 y(targets_.size(), 1, targets_);
  return nn::Mse(surrogate_.Forward(x), y);
}

FitReport PredictorController::TrainSurrogate(int epochs) {
  FitReport report;
  if (targets_.empty()) return report;
  Tensor2 x(inputs_.size(), space().OneHotSize());
  for (size_t r = 0; r < inputs_.size(); ++r) {
    const auto row = space().OneHot(inputs_[r]);
    std::copy(row.begin(), row.end(), x.row(r).begin());
  }
  const Tensor2 y(targets_.size(), 1, targets_);
  report.initial_mse = nn::Mse(surrogate_.Forward(x), y);
  for (int e = 0; e < epochs; ++e) {
    nn::Mlp::Tape tape;
    const Tensor2 pred = surrogate_.Forward(x, &tape);
    Tensor2 grad;
    nn::Mse(pred, y, &grad);
    std::vector<Tensor2> grads = surrogate_.ZeroGrads();
    surrogate_.Backward(tape, grad, &grads);
    optimizer_.Step(surrogate_.Parameters(), grads);
  }
  report.final_mse = nn::Mse(surrogate_.Forward(x), y);
  return report;
}

void PredictorController::Acquire() {
  std::set<Genotype> excluded(inputs_.begin(), inputs_.end());
  excluded.insert(pending_.begin(), pending_.end());
  std::vector<Genotype> candidates;
  std::vector<double> scores;
  const int max_draws = options_.candidates * 20;
  for (int draw = 0; draw < max_draws &&
                     static_cast<int>(candidates.size()) < options_.candidates;
       ++draw) {
    Genotype g = space().Canonicalize(UniformRollout().genotype);
    if (!excluded.insert(g).second) continue;
    scores.push_back(Score(g));
    candidates.push_back(std::move(g));
  }
  const std::vector<size_t> order = RankDescending(scores);
  for (size_t i = 0; i < order.size() && i < static_cast<size_t>(options_.top_k); ++i) {
    pending_.push_back(candidates[order[i]]);
  }
}

std::vector<DiscreteRollout> PredictorController::SampleExplore(int n) {
  std::vector<DiscreteRollout> out;
  for (int i = 0; i < n; ++i) {
    if (pending_.empty()) Acquire();
    if (pending_.empty()) {
      out.push_back(UniformRollout());
      continue;
    }
    out.push_back(DiscreteRollout{pending_.front(), nullptr, {}});
    pending_.pop_front();
  }
  return out;
}

std::vector<DiscreteRollout> PredictorController::SampleDerive(int n) const {
  Rng rng = DeriveRng();
  std::set<Genotype> seen;
  std::vector<Genotype> candidates;
  std::vector<double> scores;
  const int wanted = std::max(options_.candidates, n);
  for (int draw = 0; draw < wanted * 20 && static_cast<int>(candidates.size()) < wanted;
       ++draw) {
    Genotype g = space().Canonicalize(space().RandomRollout(rng).genotype);
    if (!seen.insert(g).second) continue;
    scores.push_back(Score(g));
    candidates.push_back(std::move(g));
  }
  const std::vector<size_t> order = RankDescending(scores);
  std::vector<DiscreteRollout> out;
  for (size_t i = 0; static_cast<int>(out.size()) < n; ++i) {
    out.push_back(DiscreteRollout{candidates[order[i % order.size()]], nullptr, {}});
  }
  return out;
}

StepStats PredictorController::DoStep(std::span<const DiscreteRollout> rollouts) {
  for (const auto& r : rollouts) AddObservation(r.genotype, r.reward());
  const FitReport fit = TrainSurrogate(options_.epochs);
  return {{"surrogate_mse_before", fit.initial_mse},
          {"surrogate_mse_after", fit.final_mse},
          {"dataset_size", static_cast<double>(targets_.size())}};
}

void PredictorController::SaveExtra(nn::TensorList& out) const {
  const size_t width = space().decision_count();
  SaveGenotypes("predictor.inputs", inputs_, width, out);
  out.Add("predictor.targets", Tensor2(1, targets_.size(), targets_));
  const std::vector<Genotype> pending(pending_.begin(), pending_.end());
  SaveGenotypes("predictor.pending", pending, width, out);
  surrogate_.Save("predictor.surrogate.", out);
  optimizer_.Save("predictor.adam.", out);
}

void PredictorController::LoadExtra(const nn::TensorList& in) {
  const size_t width = space().decision_count();
  std::vector<Genotype> inputs = LoadGenotypes("predictor.inputs", width, in);
  const Tensor2& targets = in.Get("predictor.targets", 1, inputs.size());
  std::vector<Genotype> pending = LoadGenotypes("predictor.pending", width, in);
  for (const auto& g : inputs) {
    if (!space().IsValid(g)) throw CheckpointError("predictor: invalid genotype");
  }
  for (const auto& g : pending) {
    if (!space().IsValid(g)) throw CheckpointError("predictor: invalid genotype");
  }
  nn::Mlp surrogate = surrogate_;
  surrogate.Load("predictor.surrogate.", in);
  if (surrogate.layers().empty() ||
      surrogate.layers().front().in() != space().OneHotSize() ||
      surrogate.layers().back().out() != 1) {
    throw CheckpointError("predictor: surrogate shape does not match the space");
  }
  nn::Optimizer optimizer(nn::OptimizerKind::kAdam, options_.learning_rate);
  optimizer.Load("predictor.adam.", in);
  inputs_ = std::move(inputs);
  targets_ = targets.values();
  pending_.assign(pending.begin(), pending.end());
  surrogate_ = std::move(surrogate);
  optimizer_ = std::move(optimizer);
}

}  // namespace nasforge
