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

#ifndef NASFORGE_ORCHESTRATOR_TRAINER_H_
#define NASFORGE_ORCHESTRATOR_TRAINER_H_

#include <string>

#include "nasforge/core/component.h"

namespace nasforge {

struct TrainerConfig {
  int epochs = 1;
  int samples_per_epoch = 10;
  int evaluator_updates_per_epoch = 0;
  int derive_count = 5;
  // 0 disables periodic checkpoints.
  int checkpoint_every = 0;
};

struct AsyncConfig {
  int num_workers = 1;
  // 0 means 2 x num_workers. A single worker always runs with one rollout
  // in flight.
  int max_inflight = 0;

  int EffectiveMaxInflight() const;
};

// Search-loop settings; "simple" runs the serial loop, "async" the
// dispatcher/worker loop.
class Trainer : public Component {
 public:
  Trainer(std::string type, TrainerConfig config, AsyncConfig async = {});

  ComponentKind kind() const final { return ComponentKind::kTrainer; }
  const std::string& type_name() const { return type_; }
  bool is_async() const { return type_ == "async"; }
  const TrainerConfig& config() const { return config_; }
  TrainerConfig& mutable_config() { return config_; }
  const AsyncConfig& async_config() const { return async_; }

 private:
  std::string type_;
  TrainerConfig config_;
  AsyncConfig async_;
};

}  // namespace nasforge

#endif  // NASFORGE_ORCHESTRATOR_TRAINER_H_
