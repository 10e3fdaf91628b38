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

#include "nasforge/controller/rl_controller.h"

#include <cmath>

#include "nasforge/common/error.h"
#include "nasforge/nn/loss.h"

namespace nasforge {

using nn::Tensor2;

struct RlController::Trace {
  Genotype genotype;
  std::vector<Tensor2> inputs;
  std::vector<int> previous;
  std::vector<nn::LstmStepCache> lstm;
  std::vector<Tensor2> hidden;
  std::vector<nn::DenseLayer::Cache> head;
  std::vector<std::vector<double>> logits;
};

RlController::RlController(std::shared_ptr<const SearchSpace> space,
                           std::shared_ptr<Rng> rng, RlOptions options)
    : Controller(std::move(space), std::move(rng)),
      options_(options),
      optimizer_(nn::OptimizerKind::kAdam, options.learning_rate) {
  if (options_.hidden_size < 1 || options_.embedding_size < 1) {
    throw ConfigError("rl: hidden_size and embedding_size must be >= 1");
  }
  if (options_.entropy_weight < 0) throw ConfigError("rl: entropy_weight must be >= 0");
  if (!(options_.baseline_decay >= 0 && options_.baseline_decay < 1)) {
    throw ConfigError("rl: baseline_decay must lie in [0, 1)");
  }
  const auto hidden = static_cast<size_t>(options_.hidden_size);
  const auto embed = static_cast<size_t>(options_.embedding_size);
  const auto& cards = this->space().cardinalities();
  Rng& r = this->rng();
  lstm_ = nn::LstmParams::Initialized(embed, hidden, r);
  start_ = Tensor2(1, embed);
  for (size_t i = 0; i < embed; ++i) start_[i] = r.Uniform(-0.1, 0.1);
  for (size_t t = 1; t < cards.size(); ++t) {
    Tensor2 e(static_cast<size_t>(cards[t - 1]), embed);
    for (size_t i = 0; i < e.size(); ++i) e[i] = r.Uniform(-0.1, 0.1);
    embeddings_.push_back(std::move(e));
  }
  for (int c : cards) {
    heads_.push_back(nn::DenseLayer::Initialized(hidden, static_cast<size_t>(c),
                                                 nn::Activation::kIdentity, r));
  }
}

std::vector<Tensor2*> RlController::Parameters() {
  std::vector<Tensor2*> out = lstm_.Parameters();
  out.push_back(&start_);
  for (auto& e : embeddings_) out.push_back(&e);
  for (auto& h : heads_) {
    out.push_back(&h.weight);
    out.push_back(&h.bias);
  }
  return out;
}

size_t RlController::HeadBiasIndex(size_t position) const {
  return 8 + 1 + embeddings_.size() + 2 * position + 1;
}

Tensor2 RlController::StepInput(size_t t, int previous) const {
  if (t == 0) return start_;
  const Tensor2& table = embeddings_[t - 1];
  Tensor2 x(1, table.cols());
  const auto row = table.row(static_cast<size_t>(previous));
  std::copy(row.begin(), row.end(), x.data());
  return x;
}

RlController::Trace RlController::Run(const Genotype* forced, Rng* rng) const {
  const size_t steps = space().decision_count();
  Trace trace;
  nn::LstmState state = nn::LstmState::Zeros(1, lstm_.hidden_size);
  int previous = 0;
  for (size_t t = 0; t < steps; ++t) {
    trace.inputs.push_back(StepInput(t, previous));
    trace.previous.push_back(previous);
    trace.lstm.emplace_back();
    state = nn::LstmCellForward(lstm_, trace.inputs.back(), state, &trace.lstm.back());
    trace.hidden.push_back(state.h);
    trace.head.emplace_back();
    const Tensor2 logits = heads_[t].Forward(state.h, &trace.head.back());
    trace.logits.push_back(logits.values());
    int choice = 0;
    if (forced != nullptr) {
      choice = (*forced)[t];
    } else if (rng != nullptr) {
      const std::vector<double> p = nn::Softmax(trace.logits.back());
      const double u = rng->Uniform();
      double cumulative = 0.0;
      choice = static_cast<int>(p.size()) - 1;
      for (size_t k = 0; k < p.size(); ++k) {
        cumulative += p[k];
        if (u < cumulative) {
          choice = static_cast<int>(k);
          break;
        }
      }
    } else {
      const auto& z = trace.logits.back();
      for (size_t k = 1; k < z.size(); ++k) {
        if (z[k] > z[static_cast<size_t>(choice)]) choice = static_cast<int>(k);
      }
    }
    trace.genotype.push_back(choice);
    previous = choice;
  }
  return trace;
}

std::vector<std::vector<double>> RlController::DecisionProbs(
    const Genotype& genotype) const {
  space().Validate(genotype);
  const Trace trace = Run(&genotype, nullptr);
  std::vector<std::vector<double>> out;
  for (const auto& z : trace.logits) out.push_back(nn::Softmax(z));
  return out;
}

double RlController::LogProb(const Genotype& genotype) const {
  space().Validate(genotype);
  const Trace trace = Run(&genotype, nullptr);
  double total = 0.0;
  for (size_t t = 0; t < trace.logits.size(); ++t) {
    total += nn::LogSoftmax(trace.logits[t])[static_cast<size_t>(genotype[t])];
  }
  return total;
}

std::vector<Tensor2> RlController::PolicyGradient(
    std::span<const DiscreteRollout> rollouts) const {
  const size_t steps = space().decision_count();
  const size_t hidden = lstm_.hidden_size;
  // Zeroed gradients aligned with Parameters().
  nn::LstmParams lstm_grads = nn::LstmParams::Zeros(lstm_.input_size, hidden);
  Tensor2 start_grad(start_.rows(), start_.cols());
  std::vector<Tensor2> embed_grads;
  for (const auto& e : embeddings_) embed_grads.emplace_back(e.rows(), e.cols());
  std::vector<nn::DenseLayer::Grads> head_grads;
  for (const auto& h : heads_) head_grads.push_back(h.ZeroGrads());

  const double scale = 1.0 / static_cast<double>(rollouts.size());
  for (const auto& rollout : rollouts) {
    const double advantage = rollout.reward() - baseline_;
    const Trace trace = Run(&rollout.genotype, nullptr);
    Tensor2 dh_next(1, hidden);
    Tensor2 dc_next(1, hidden);
    for (size_t t = steps; t-- > 0;) {
      const std::vector<double> p = nn::Softmax(trace.logits[t]);
      std::vector<double> entropy_grad;
      nn::SoftmaxEntropy(trace.logits[t], &entropy_grad);
      Tensor2 dlogits(1, p.size());
      for (size_t k = 0; k < p.size(); ++k) {
        const double onehot = static_cast<int>(k) == rollout.genotype[t] ? 1.0 : 0.0;
        dlogits[k] = scale * (advantage * (p[k] - onehot) -
                              options_.entropy_weight * entropy_grad[k]);
      }
      Tensor2 dh = heads_[t].Backward(trace.hidden[t], trace.head[t], dlogits,
                                      &head_grads[t]);
      dh += dh_next;
      nn::LstmStepGrads g =
          nn::LstmCellBackward(lstm_, trace.lstm[t], dh, dc_next, &lstm_grads);
      if (t == 0) {
        start_grad += g.x;
      } else {
        auto row = embed_grads[t - 1].row(static_cast<size_t>(trace.previous[t]));
        for (size_t k = 0; k < row.size(); ++k) row[k] += g.x[k];
      }
      dh_next = std::move(g.h_prev);
      dc_next = std::move(g.c_prev);
    }
  }
  std::vector<Tensor2> out;
  for (const Tensor2* p : std::as_const(lstm_grads).Parameters()) out.push_back(*p);
  out.push_back(std::move(start_grad));
  for (auto& e : embed_grads) out.push_back(std::move(e));
  for (auto& h : head_grads) {
    out.push_back(std::move(h.weight));
    out.push_back(std::move(h.bias));
  }
  return out;
}

std::vector<DiscreteRollout> RlController::SampleExplore(int n) {
  std::vector<DiscreteRollout> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(DiscreteRollout{Run(nullptr, &rng()).genotype, nullptr, {}});
  }
  return out;
}

std::vector<DiscreteRollout> RlController::SampleDerive(int n) const {
  const Genotype greedy = Run(nullptr, nullptr).genotype;
  return std::vector<DiscreteRollout>(static_cast<size_t>(n),
                                      DiscreteRollout{greedy, nullptr, {}});
}

StepStats RlController::DoStep(std::span<const DiscreteRollout> rollouts) {
  if (rollouts.empty()) return {};
  double mean_log_prob = 0.0;
  double mean_reward = 0.0;
  for (const auto& r : rollouts) {
    mean_log_prob += LogProb(r.genotype);
    mean_reward += r.reward();
  }
  mean_log_prob /= static_cast<double>(rollouts.size());
  mean_reward /= static_cast<double>(rollouts.size());
  const std::vector<Tensor2> grads = PolicyGradient(rollouts);
  optimizer_.Step(Parameters(), grads);
  for (const auto& r : rollouts) {
    baseline_ = options_.baseline_decay * baseline_ +
                (1.0 - options_.baseline_decay) * r.reward();
  }
  return {{"mean_log_prob", mean_log_prob},
          {"mean_reward", mean_reward},
          {"baseline", baseline_}};
}

void RlController::SaveExtra(nn::TensorList& out) const {
  auto params = const_cast<RlController*>(this)->Parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    out.Add("rl.param" + std::to_string(i), *params[i]);
  }
  out.AddScalar("rl.baseline", baseline_);
  optimizer_.Save("rl.adam.", out);
}

void RlController::LoadExtra(const nn::TensorList& in) {
  auto params = Parameters();
  std::vector<Tensor2> loaded;
  for (size_t i = 0; i < params.size(); ++i) {
    loaded.push_back(in.Get("rl.param" + std::to_string(i), params[i]->rows(),
                            params[i]->cols()));
  }
  const double baseline = in.GetScalar("rl.baseline");
  nn::Optimizer optimizer(nn::OptimizerKind::kAdam, options_.learning_rate);
  optimizer.Load("rl.adam.", in);
  for (size_t i = 0; i < params.size(); ++i) *params[i] = std::move(loaded[i]);
  baseline_ = baseline;
  optimizer_ = std::move(optimizer);
}

}  // namespace nasforge
