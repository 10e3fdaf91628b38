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

#include "nasforge/core/session.h"

#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/evaluator/dataset.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/evaluator/objective.h"
#include "nasforge/evaluator/weights_manager.h"
#include "nasforge/orchestrator/trainer.h"
#include "nasforge/search_space/search_space.h"

namespace nasforge {
namespace {

template <typename T>
std::shared_ptr<T> Typed(const std::shared_ptr<Component>& c,
                         ComponentKind kind) {
  auto typed = std::dynamic_pointer_cast<T>(c);
  if (typed == nullptr) {
    throw ConfigError(std::string(ComponentKindName(kind)) +
                      ": constructed component has the wrong interface");
  }
  return typed;
}

}  // namespace

uint64_t StreamSeed(uint64_t seed, ComponentKind kind) {
  return Mix64(Mix64(seed) ^ (0xA24BAED4963EE407ULL *
                              (static_cast<uint64_t>(kind) + 1)));
}

RngStreams::RngStreams(uint64_t seed) {
  for (ComponentKind kind : kAllComponentKinds) {
    streams_[static_cast<int>(kind)] =
        std::make_shared<Rng>(StreamSeed(seed, kind));
  }
}

std::map<std::string, std::string> RngStreams::States() const {
  std::map<std::string, std::string> out;
  for (ComponentKind kind : kAllComponentKinds) {
    out[std::string(ComponentKindName(kind))] =
        streams_[static_cast<int>(kind)]->State();
  }
  return out;
}

void RngStreams::Restore(const std::map<std::string, std::string>& states) {
  for (ComponentKind kind : kAllComponentKinds) {
    if (states.count(std::string(ComponentKindName(kind))) == 0) {
      throw CheckpointError("rng state missing for " +
                            std::string(ComponentKindName(kind)));
    }
  }
  for (ComponentKind kind : kAllComponentKinds) {
    streams_[static_cast<int>(kind)]->SetState(
        states.at(std::string(ComponentKindName(kind))));
  }
}

void BuildContext::Put(ComponentKind kind,
                       std::shared_ptr<Component> component) {
  built_[static_cast<int>(kind)] = std::move(component);
}

std::shared_ptr<Component> BuildContext::Get(ComponentKind kind) const {
  const auto& c = built_[static_cast<int>(kind)];
  if (c == nullptr) {
    throw ConfigError(std::string(ComponentKindName(kind)) +
                      " is not available at this point of assembly");
  }
  return c;
}

std::shared_ptr<Dataset> BuildContext::dataset() const {
  return Typed<Dataset>(Get(ComponentKind::kDataset), ComponentKind::kDataset);
}
std::shared_ptr<Objective> BuildContext::objective() const {
  return Typed<Objective>(Get(ComponentKind::kObjective),
                          ComponentKind::kObjective);
}
std::shared_ptr<SearchSpace> BuildContext::search_space() const {
  return Typed<SearchSpace>(Get(ComponentKind::kSearchSpace),
                            ComponentKind::kSearchSpace);
}
std::shared_ptr<WeightsManager> BuildContext::weights_manager() const {
  return Typed<WeightsManager>(Get(ComponentKind::kWeightsManager),
                               ComponentKind::kWeightsManager);
}
std::shared_ptr<Evaluator> BuildContext::evaluator() const {
  return Typed<Evaluator>(Get(ComponentKind::kEvaluator),
                          ComponentKind::kEvaluator);
}
std::shared_ptr<Controller> BuildContext::controller() const {
  return Typed<Controller>(Get(ComponentKind::kController),
                           ComponentKind::kController);
}

Session AssembleSession(const Config& config,
                        const ComponentRegistry& registry) {
  static constexpr ComponentKind kOrder[] = {
      ComponentKind::kDataset,        ComponentKind::kObjective,
      ComponentKind::kSearchSpace,    ComponentKind::kWeightsManager,
      ComponentKind::kEvaluator,      ComponentKind::kController,
      ComponentKind::kTrainer,
  };
  Session session;
  session.config_ = std::make_shared<const Config>(config);
  session.seed_ = config.seed();
  session.streams_ = std::make_shared<RngStreams>(session.seed_);
  BuildContext context(session.seed_, session.streams_);

  for (ComponentKind kind : kOrder) {
    const std::string prefix = std::string(ComponentKindName(kind)) + ": ";
    std::shared_ptr<Component> component;
    try {
      const ComponentParams params = config.Params(kind, registry);
      const RegistryEntry& entry =
          registry.Lookup(kind, config.ComponentType(kind));
      component = entry.constructor(params, context);
    } catch (const ValidationError& e) {
      throw ValidationError(prefix, e);
    } catch (const ConfigError& e) {
      throw ConfigError(prefix + e.what());
    } catch (const std::exception& e) {
      throw Error(prefix + e.what());
    }
    if (component == nullptr || component->kind() != kind) {
      throw ConfigError(prefix + "constructor returned a component of the "
                                 "wrong kind");
    }
    context.Put(kind, component);
  }

  session.dataset_ = context.dataset();
  session.objective_ = context.objective();
  session.search_space_ = context.search_space();
  session.weights_manager_ = context.weights_manager();
  session.evaluator_ = context.evaluator();
  session.controller_ = context.controller();
  session.trainer_ =
      Typed<Trainer>(context.Get(ComponentKind::kTrainer), ComponentKind::kTrainer);
  return session;
}

Session AssembleSession(const Config& config) {
  return AssembleSession(config, ComponentRegistry::Global());
}

}  // namespace nasforge
