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

#ifndef NASFORGE_CORE_SESSION_H_
#define NASFORGE_CORE_SESSION_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "nasforge/common/rng.h"
#include "nasforge/core/component.h"
#include "nasforge/core/config.h"
#include "nasforge/core/registry.h"

namespace nasforge {

class Dataset;
class Objective;
class SearchSpace;
class Controller;
class WeightsManager;
class Evaluator;
class Trainer;

// Independent stream seed for `kind`, derived from the session seed.
uint64_t StreamSeed(uint64_t seed, ComponentKind kind);

// Per-kind random streams owned by a session.
class RngStreams {
 public:
  explicit RngStreams(uint64_t seed);
  std::shared_ptr<Rng> Get(ComponentKind kind) const {
    return streams_[static_cast<int>(kind)];
  }
  std::map<std::string, std::string> States() const;
  // Throws CheckpointError if a kind is missing.
  void Restore(const std::map<std::string, std::string>& states);

 private:
  std::array<std::shared_ptr<Rng>, 7> streams_;
};

// Constructed components so far, in assembly order, available to later
// constructors.
class BuildContext {
 public:
  BuildContext(uint64_t seed, std::shared_ptr<RngStreams> streams)
      : seed_(seed), streams_(std::move(streams)) {}

  uint64_t seed() const { return seed_; }
  std::shared_ptr<Rng> Stream(ComponentKind kind) const {
    return streams_->Get(kind);
  }

  void Put(ComponentKind kind, std::shared_ptr<Component> component);
  // Throws ConfigError if `kind` has not been built yet.
  std::shared_ptr<Component> Get(ComponentKind kind) const;

  std::shared_ptr<Dataset> dataset() const;
  std::shared_ptr<Objective> objective() const;
  std::shared_ptr<SearchSpace> search_space() const;
  std::shared_ptr<WeightsManager> weights_manager() const;
  std::shared_ptr<Evaluator> evaluator() const;
  std::shared_ptr<Controller> controller() const;

 private:
  uint64_t seed_;
  std::shared_ptr<RngStreams> streams_;
  std::array<std::shared_ptr<Component>, 7> built_;
};

// One constructed instance per ComponentKind. Controller, weights manager
// and evaluator share a single search-space instance.
class Session {
 public:
  const Config& config() const { return *config_; }
  uint64_t seed() const { return seed_; }

  Dataset& dataset() const { return *dataset_; }
  Objective& objective() const { return *objective_; }
  SearchSpace& search_space() const { return *search_space_; }
  Controller& controller() const { return *controller_; }
  WeightsManager& weights_manager() const { return *weights_manager_; }
  Evaluator& evaluator() const { return *evaluator_; }
  Trainer& trainer() const { return *trainer_; }

  std::shared_ptr<SearchSpace> search_space_ptr() const { return search_space_; }
  std::shared_ptr<Controller> controller_ptr() const { return controller_; }
  std::shared_ptr<Evaluator> evaluator_ptr() const { return evaluator_; }
  std::shared_ptr<WeightsManager> weights_manager_ptr() const {
    return weights_manager_;
  }

  RngStreams& streams() const { return *streams_; }

  // Replaces the controller (tests wrap the configured one).
  void set_controller(std::shared_ptr<Controller> controller) {
    controller_ = std::move(controller);
  }
  void set_evaluator(std::shared_ptr<Evaluator> evaluator) {
    evaluator_ = std::move(evaluator);
  }
  void set_weights_manager(std::shared_ptr<WeightsManager> weights_manager) {
    weights_manager_ = std::move(weights_manager);
  }

 private:
  friend Session AssembleSession(const Config&, const ComponentRegistry&);

  std::shared_ptr<const Config> config_;
  uint64_t seed_ = kDefaultSeed;
  std::shared_ptr<RngStreams> streams_;
  std::shared_ptr<Dataset> dataset_;
  std::shared_ptr<Objective> objective_;
  std::shared_ptr<SearchSpace> search_space_;
  std::shared_ptr<Controller> controller_;
  std::shared_ptr<WeightsManager> weights_manager_;
  std::shared_ptr<Evaluator> evaluator_;
  std::shared_ptr<Trainer> trainer_;
};

// Builds every component in the order dataset, objective, search_space,
// weights_manager, evaluator, controller, trainer. Constructor failures
// are rethrown with the kind name as prefix ("evaluator: ...").
Session AssembleSession(const Config& config,
                        const ComponentRegistry& registry);
Session AssembleSession(const Config& config);

}  // namespace nasforge

#endif  // NASFORGE_CORE_SESSION_H_
