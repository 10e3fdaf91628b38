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

#ifndef NASFORGE_CONTROLLER_CONTROLLER_H_
#define NASFORGE_CONTROLLER_CONTROLLER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/core/component.h"
#include "nasforge/core/rollout.h"
#include "nasforge/nn/tensor_io.h"
#include "nasforge/search_space/search_space.h"

namespace nasforge {

enum class SampleMode { kExplore, kDerive };

struct ScoredGenotype {
  Genotype genotype;
  double reward = 0.0;
};

using StepStats = std::map<std::string, double>;

// Samples rollouts from a search space and learns from their rewards.
//
// Explore-mode sampling and Step() mutate state and must come from a single
// writer. Derive-mode sampling only reads state and is deterministic.
class Controller : public Component {
 public:
  Controller(std::shared_ptr<const SearchSpace> space, std::shared_ptr<Rng> rng);

  ComponentKind kind() const final { return ComponentKind::kController; }
  virtual std::string type_name() const = 0;

  const SearchSpace& space() const { return *space_; }
  std::shared_ptr<const SearchSpace> space_ptr() const { return space_; }

  // Throws Error for n < 1.
  std::vector<DiscreteRollout> Sample(int n, SampleMode mode = SampleMode::kExplore);
  // Throws Error when a rollout carries no reward; nothing is updated then.
  StepStats Step(std::span<const DiscreteRollout> rollouts);

  int64_t step_count() const { return step_count_; }
  // Distinct canonical genotypes, best reward first (earlier wins ties).
  const std::vector<ScoredGenotype>& best_seen() const { return best_; }

  // Checkpoint with header kind "controller/<type>".
  void Save(const std::string& path) const;
  // Throws CheckpointError on kind mismatch or corrupt files; the controller
  // is left unchanged in that case.
  void Load(const std::string& path);

  nn::TensorList SaveState() const;
  void LoadState(const nn::TensorList& state);

  static constexpr size_t kBestCapacity = 64;
  static constexpr uint32_t kCheckpointVersion = 1;

 protected:
  virtual std::vector<DiscreteRollout> SampleExplore(int n) = 0;
  // Best-seen genotypes, padded with fixed-seed uniform samples.
  virtual std::vector<DiscreteRollout> SampleDerive(int n) const;
  virtual StepStats DoStep(std::span<const DiscreteRollout> rollouts) = 0;
  virtual void SaveExtra(nn::TensorList& out) const { (void)out; }
  virtual void LoadExtra(const nn::TensorList& in) { (void)in; }

  Rng& rng() { return *rng_; }
  DiscreteRollout UniformRollout() { return space_->RandomRollout(*rng_); }
  // Deterministic stream for derive-mode padding and candidates.
  Rng DeriveRng() const { return Rng(kDeriveSeed); }

  static constexpr uint64_t kDeriveSeed = 0x5DE1F7ULL;

 private:
  void RecordBest(const Genotype& genotype, double reward);

  std::shared_ptr<const SearchSpace> space_;
  std::shared_ptr<Rng> rng_;
  int64_t step_count_ = 0;
  std::vector<ScoredGenotype> best_;
};

// Writes a list of genotypes as a flat int tensor plus their count.
void SaveGenotypes(const std::string& name, std::span<const Genotype> genotypes,
                   size_t width, nn::TensorList& out);
std::vector<Genotype> LoadGenotypes(const std::string& name, size_t width,
                                    const nn::TensorList& in);

class RandomController : public Controller {
 public:
  using Controller::Controller;
  std::string type_name() const override { return "random"; }

 protected:
  std::vector<DiscreteRollout> SampleExplore(int n) override;
  StepStats DoStep(std::span<const DiscreteRollout>) override { return {}; }
};

}  // namespace nasforge

#endif  // NASFORGE_CONTROLLER_CONTROLLER_H_
