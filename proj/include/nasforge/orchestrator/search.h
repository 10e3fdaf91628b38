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

#ifndef NASFORGE_ORCHESTRATOR_SEARCH_H_
#define NASFORGE_ORCHESTRATOR_SEARCH_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nasforge/core/rollout.h"
#include "nasforge/core/session.h"
#include "nasforge/orchestrator/trainer.h"

namespace nasforge {

struct EvaluationRecord {
  int epoch = 0;
  // Dispatch index within the epoch.
  int step = 0;
  Genotype genotype;
  std::string genotype_text;
  double reward = 0.0;
  std::map<std::string, double> metrics;
  bool failed = false;
  std::string error;
  int attempts = 1;
  // Controller steps applied between dispatch and completion.
  int64_t staleness = 0;
  // Outstanding rollouts right after this one was dispatched.
  int inflight = 1;
};

struct EpochSummary {
  int epoch = 0;
  int evaluations = 0;
  double mean_reward = 0.0;
  double best_so_far = 0.0;
  double update_loss = 0.0;
};

struct SearchReport {
  std::vector<EvaluationRecord> evaluations;
  std::vector<EpochSummary> epochs;
  Genotype best_genotype;
  double best_reward = 0.0;
  bool has_best = false;
  int failed = 0;
  int max_inflight_observed = 0;
  int64_t max_staleness = 0;
  // Last completed epoch (equals the configured count unless stopped).
  int last_epoch = 0;
  bool resumed = false;
};

struct SearchOptions {
  // JSON-lines log; appended to on resume. Empty disables logging.
  std::string log_path;
  // Root holding epoch_<k> checkpoint directories. Empty disables them.
  std::string checkpoint_dir;
  // Continue after the latest checkpoint in checkpoint_dir, if any.
  bool resume = false;
  // Stop (as if interrupted) after this epoch; -1 runs to completion.
  int stop_after_epoch = -1;
  std::function<void(const EvaluationRecord&)> on_record;
};

// sample -> assemble -> evaluate -> step for every rollout of an epoch,
// then the evaluator updates.
SearchReport SimpleSearch(Session& session, const TrainerConfig& config,
                          const SearchOptions& options = {});

// A dispatcher thread owns the controller; workers evaluate rollouts and
// results reach controller.Step in completion order. Each epoch drains its
// in-flight rollouts before the evaluator updates. Failed evaluations are
// retried once, then recorded as failed. Throws ConfigError for evaluators
// that cannot evaluate concurrently when num_workers > 1.
SearchReport AsyncSearch(Session& session, const TrainerConfig& config,
                         const AsyncConfig& async, const SearchOptions& options = {});

// Dispatches on the session's trainer type.
SearchReport RunSearch(Session& session, const SearchOptions& options = {});

// One JSON object per line.
std::string RecordToJson(const EvaluationRecord& record);
std::string SummaryToJson(const SearchReport& report);

}  // namespace nasforge

#endif  // NASFORGE_ORCHESTRATOR_SEARCH_H_
