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

#include "nasforge/orchestrator/trainer.h"

#include "nasforge/common/error.h"

namespace nasforge {

int AsyncConfig::EffectiveMaxInflight() const {
  if (num_workers <= 1) return 1;
  return max_inflight > 0 ? max_inflight : 2 * num_workers;
}

Trainer::Trainer(std::string type, TrainerConfig config, AsyncConfig async)
    : type_(std::move(type)), config_(config), async_(async) {
  if (type_ != "simple" && type_ != "async") {
    throw ConfigError("trainer type must be simple or async");
  }
  if (config_.epochs < 1) throw ConfigError("trainer: epochs must be >= 1");
  if (config_.samples_per_epoch < 0 || config_.evaluator_updates_per_epoch < 0 ||
      config_.derive_count < 0 || config_.checkpoint_every < 0) {
    throw ConfigError("trainer: counts must be >= 0");
  }
  if (async_.num_workers < 1) throw ConfigError("trainer: num_workers must be >= 1");
  if (async_.max_inflight < 0) throw ConfigError("trainer: max_inflight must be >= 0");
}

}  // namespace nasforge
