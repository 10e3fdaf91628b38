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

#include "nasforge/controller/controller.h"

#include <algorithm>
#include <set>

#include "nasforge/common/error.h"

namespace nasforge {

Controller::Controller(std::shared_ptr<const SearchSpace> space,
                       std::shared_ptr<Rng> rng)
    : space_(std::move(space)), rng_(std::move(rng)) {
  if (space_ == nullptr) throw ConfigError("controller needs a search space");
  if (rng_ == nullptr) rng_ = std::make_shared<Rng>();
}

std::vector<DiscreteRollout> Controller::Sample(int n, SampleMode mode) {
  if (n < 1) throw Error("sample count must be >= 1, got " + std::to_string(n));
  if (mode == SampleMode::kDerive) return SampleDerive(n);
  if (step_count_ == 0) {
    std::vector<DiscreteRollout> out;
    for (int i = 0; i < n; ++i) out.push_back(UniformRollout());
    return out;
  }
  return SampleExplore(n);
}

StepStats Controller::Step(std::span<const DiscreteRollout> rollouts) {
  for (const auto& r : rollouts) {
    if (!r.HasReward()) throw Error("controller step: rollout has no reward");
    space_->Validate(r.genotype);
  }
  StepStats stats = DoStep(rollouts);
  for (const auto& r : rollouts) RecordBest(r.genotype, r.reward());
  ++step_count_;
  return stats;
}

void Controller::RecordBest(const Genotype& genotype, double reward) {
  const Genotype canonical = space_->Canonicalize(genotype);
  auto it = std::find_if(best_.begin(), best_.end(), [&](const ScoredGenotype& s) {
    return s.genotype == canonical;
  });
  if (it != best_.end()) {
    if (reward <= it->reward) return;
    best_.erase(it);
  }
  auto pos = std::find_if(best_.begin(), best_.end(), [&](const ScoredGenotype& s) {
    return s.reward < reward;
  });
  best_.insert(pos, ScoredGenotype{canonical, reward});
  if (best_.size() > kBestCapacity) best_.pop_back();
}

std::vector<DiscreteRollout> Controller::SampleDerive(int n) const {
  std::vector<DiscreteRollout> out;
  std::set<Genotype> used;
  for (const auto& s : best_) {
    if (static_cast<int>(out.size()) == n) break;
    out.push_back(DiscreteRollout{s.genotype, nullptr, {}});
    used.insert(s.genotype);
  }
  Rng rng = DeriveRng();
  for (int attempt = 0; static_cast<int>(out.size()) < n; ++attempt) {
    Genotype g = space_->Canonicalize(space_->RandomRollout(rng).genotype);
    if (used.insert(g).second || attempt > 100 * n) {
      out.push_back(DiscreteRollout{std::move(g), nullptr, {}});
    }
  }
  return out;
}

void SaveGenotypes(const std::string& name, std::span<const Genotype> genotypes,
                   size_t width, nn::TensorList& out) {
  std::vector<int> flat;
  flat.reserve(genotypes.size() * width);
  for (const auto& g : genotypes) {
    if (g.size() != width) throw Error("genotype width mismatch in " + name);
    flat.insert(flat.end(), g.begin(), g.end());
  }
  out.AddScalar(name + ".count", static_cast<double>(genotypes.size()));
  out.AddInts(name, flat);
}

std::vector<Genotype> LoadGenotypes(const std::string& name, size_t width,
                                    const nn::TensorList& in) {
  const auto count = static_cast<size_t>(in.GetScalar(name + ".count"));
  const std::vector<int> flat = in.GetInts(name);
  if (flat.size() != count * width) {
    throw CheckpointError("genotype list '" + name + "' has the wrong size");
  }
  std::vector<Genotype> out;
  for (size_t i = 0; i < count; ++i) {
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i * width),
                     flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * width));
  }
  return out;
}

nn::TensorList Controller::SaveState() const {
  nn::TensorList out;
  out.AddScalar("controller.step_count", static_cast<double>(step_count_));
  std::vector<Genotype> genotypes;
  std::vector<double> rewards;
  for (const auto& s : best_) {
    genotypes.push_back(s.genotype);
    rewards.push_back(s.reward);
  }
  SaveGenotypes("controller.best", genotypes, space_->decision_count(), out);
  out.Add("controller.best_rewards", nn::Tensor2(1, rewards.size(), rewards));
  SaveExtra(out);
  return out;
}

void Controller::LoadState(const nn::TensorList& state) {
  const nn::TensorList snapshot = SaveState();
  auto apply = [this](const nn::TensorList& in) {
    const auto steps = static_cast<int64_t>(in.GetScalar("controller.step_count"));
    std::vector<Genotype> genotypes =
        LoadGenotypes("controller.best", space_->decision_count(), in);
    const nn::Tensor2& rewards =
        in.Get("controller.best_rewards", 1, genotypes.size());
    std::vector<ScoredGenotype> best;
    for (size_t i = 0; i < genotypes.size(); ++i) {
      if (!space_->IsValid(genotypes[i])) {
        throw CheckpointError("checkpoint genotype is invalid in this space");
      }
      best.push_back({std::move(genotypes[i]), rewards[i]});
    }
    LoadExtra(in);
    step_count_ = steps;
    best_ = std::move(best);
  };
  try {
    apply(state);
  } catch (const CheckpointError&) {
    apply(snapshot);
    throw;
  } catch (const std::exception& e) {
    apply(snapshot);
    throw CheckpointError(std::string("controller state: ") + e.what());
  }
}

void Controller::Save(const std::string& path) const {
  nn::TensorFile file;
  file.kind = "controller/" + type_name();
  file.version = kCheckpointVersion;
  file.tensors = SaveState();
  nn::WriteTensorFile(path, file);
}

void Controller::Load(const std::string& path) {
  nn::TensorFile file = nn::ReadTensorFile(path);
  const std::string expected = "controller/" + type_name();
  if (file.kind != expected) {
    throw CheckpointError("checkpoint kind '" + file.kind +
                          "' does not match '" + expected + "'");
  }
  if (file.version != kCheckpointVersion) {
    throw CheckpointError("unsupported controller checkpoint version " +
                          std::to_string(file.version));
  }
  LoadState(file.tensors);
}

std::vector<DiscreteRollout> RandomController::SampleExplore(int n) {
  std::vector<DiscreteRollout> out;
  for (int i = 0; i < n; ++i) out.push_back(UniformRollout());
  return out;
}

}  // namespace nasforge
