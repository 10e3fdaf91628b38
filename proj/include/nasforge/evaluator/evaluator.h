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

#ifndef NASFORGE_EVALUATOR_EVALUATOR_H_
#define NASFORGE_EVALUATOR_EVALUATOR_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/core/component.h"
#include "nasforge/core/rollout.h"
#include "nasforge/evaluator/dataset.h"
#include "nasforge/evaluator/objective.h"
#include "nasforge/evaluator/weights_manager.h"
#include "nasforge/hwcost/device.h"
#include "nasforge/hwcost/profiling.h"
#include "nasforge/nn/tensor_io.h"
#include "nasforge/search_space/search_space.h"

namespace nasforge {

class Controller;

using UpdateStats = std::map<std::string, double>;

class Evaluator : public Component {
 public:
  Evaluator(std::shared_ptr<const SearchSpace> space,
            std::shared_ptr<const Objective> objective)
      : space_(std::move(space)), objective_(std::move(objective)) {}

  ComponentKind kind() const final { return ComponentKind::kEvaluator; }
  virtual std::string type_name() const = 0;
  const SearchSpace& space() const { return *space_; }
  const Objective& objective() const { return *objective_; }

  // Fills perf (metrics, then "reward" via the objective).
  virtual void EvaluateRollout(DiscreteRollout& rollout) const = 0;
  // Periodic training of shared state; returns empty stats when there is
  // nothing to train.
  virtual UpdateStats UpdateEvaluator(Controller& controller) = 0;
  // True when EvaluateRollout may run on several threads at once.
  virtual bool concurrent_evaluation() const = 0;

  virtual void Save(nn::TensorList& out) const { (void)out; }
  virtual void Load(const nn::TensorList& in) { (void)in; }

 protected:
  std::shared_ptr<const SearchSpace> space_;
  std::shared_ptr<const Objective> objective_;
};

// Deterministic accuracy with a known optimum o. With per-position weights
// w_i in [0.5, 1.5] and o drawn from the seed:
//   d   = sum_i w_i [g_i != o_i] / sum_i w_i
//   h   = #{i : g_i != o_i and g_{i+1} != o_{i+1}} / (L - 1)
//   acc = (1 - d) (1 - 0.1 h)
// evaluated on canonical genotypes, so acc(o) = 1 and acc < 1 elsewhere.
class SyntheticOracle {
 public:
  // An empty `optimum` draws one from the seed.
  SyntheticOracle(std::shared_ptr<const SearchSpace> space, uint64_t seed,
                  Genotype optimum = {});

  double Accuracy(const Genotype& genotype) const;
  const Genotype& optimum() const { return optimum_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::shared_ptr<const SearchSpace> space_;
  Genotype optimum_;
  std::vector<double> weights_;
};

// Canonical genotype string -> accuracy, read from "genotype,accuracy" CSV.
class AccuracyTable {
 public:
  // Throws Error on duplicate keys (after canonicalization) or bad rows.
  static AccuracyTable FromCsv(const SearchSpace& space, std::string_view text);
  static AccuracyTable ReadCsv(const SearchSpace& space, const std::string& path);
  static std::string ToCsv(const SearchSpace& space,
                           const std::vector<std::pair<Genotype, double>>& rows);

  // Throws MissingEntryError.
  double Accuracy(const SearchSpace& space, const Genotype& genotype) const;
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, double> entries_;
};

struct TabularOptions {
  std::string mode = "synthetic";  // synthetic | file
  std::string path;
  std::string optimum;             // genotype string, synthetic mode only
  std::string device;              // "", gpu_like or fpga_like
  uint64_t seed = 0;
};

// Read-only oracle evaluator; optional simulated hardware metrics for the
// blockwise space.
class TabularEvaluator : public Evaluator {
 public:
  TabularEvaluator(std::shared_ptr<const SearchSpace> space,
                   std::shared_ptr<const Objective> objective,
                   TabularOptions options);

  std::string type_name() const override { return "tabular"; }
  void EvaluateRollout(DiscreteRollout& rollout) const override;
  UpdateStats UpdateEvaluator(Controller&) override { return {}; }
  bool concurrent_evaluation() const override { return true; }

  double Accuracy(const Genotype& genotype) const;
  const SyntheticOracle* oracle() const { return oracle_ ? &*oracle_ : nullptr; }

 private:
  TabularOptions options_;
  std::optional<SyntheticOracle> oracle_;
  std::optional<AccuracyTable> table_;
  std::optional<DeviceSimulator> device_;
  std::optional<ProfilingTable> profile_;
};

struct SupernetEvaluatorOptions {
  int update_samples = 4;
};

// acc = 1 - MSE / Var(y) on the fixed held-out batch of the dataset.
class SupernetEvaluator : public Evaluator {
 public:
  SupernetEvaluator(std::shared_ptr<const SearchSpace> space,
                    std::shared_ptr<const Objective> objective,
                    std::shared_ptr<SupernetWeightsManager> manager,
                    std::shared_ptr<const SyntheticRegression> dataset,
                    std::shared_ptr<Rng> rng, SupernetEvaluatorOptions options);

  std::string type_name() const override { return "supernet"; }
  // Uses rollout.candidate, assembling one when it is absent.
  void EvaluateRollout(DiscreteRollout& rollout) const override;
  // One controller.Sample call of update_samples rollouts, one SGD step on
  // a fresh training batch per candidate; returns {"loss": mean loss}.
  UpdateStats UpdateEvaluator(Controller& controller) override;
  bool concurrent_evaluation() const override { return false; }

  void Save(nn::TensorList& out) const override { manager_->Save(out); }
  void Load(const nn::TensorList& in) override { manager_->Load(in); }

  SupernetWeightsManager& manager() { return *manager_; }

 private:
  std::shared_ptr<SupernetWeightsManager> manager_;
  std::shared_ptr<const SyntheticRegression> dataset_;
  std::shared_ptr<Rng> rng_;
  SupernetEvaluatorOptions options_;
};

}  // namespace nasforge

#endif  // NASFORGE_EVALUATOR_EVALUATOR_H_
