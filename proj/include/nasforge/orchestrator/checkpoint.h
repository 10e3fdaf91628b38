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

#ifndef NASFORGE_ORCHESTRATOR_CHECKPOINT_H_
#define NASFORGE_ORCHESTRATOR_CHECKPOINT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "nasforge/core/rollout.h"
#include "nasforge/core/session.h"

namespace nasforge {

struct CheckpointMeta {
  int epoch = 0;
  int64_t evaluations = 0;
  bool has_best = false;
  Genotype best_genotype;
  double best_reward = 0.0;
  int max_inflight_observed = 0;
  int64_t max_staleness = 0;
};

// $NASFORGE_HOME, else $HOME/.nasforge, else ./.nasforge.
std::string NasforgeHome();
std::string DefaultCheckpointRoot();

std::string EpochDirectory(const std::string& root, int epoch);

// Writes <root>/epoch_<k>/{controller.bin, evaluator.bin, rng.json,
// meta.json}; the directory is staged and renamed into place.
void SaveCheckpoint(const Session& session, const std::string& root,
                    const CheckpointMeta& meta);
// Restores controller, evaluator and random streams from a checkpoint
// directory (root/epoch_<k> or any directory with the same layout).
CheckpointMeta LoadCheckpoint(Session& session, const std::string& directory);
// Highest k with a complete epoch_<k> under `root`.
std::optional<int> LatestCheckpointEpoch(const std::string& root);

}  // namespace nasforge

#endif  // NASFORGE_ORCHESTRATOR_CHECKPOINT_H_
