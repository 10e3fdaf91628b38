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

#ifndef NASFORGE_ORCHESTRATOR_WORKFLOW_H_
#define NASFORGE_ORCHESTRATOR_WORKFLOW_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nasforge/core/config.h"
#include "nasforge/core/registry.h"
#include "nasforge/core/rollout.h"
#include "nasforge/core/session.h"
#include "nasforge/evaluator/dataset.h"
#include "nasforge/nn/mlp.h"
#include "nasforge/orchestrator/genotype_file.h"
#include "nasforge/search_space/toy_mlp_space.h"

namespace nasforge {

struct ArchRecord {
  int line = 0;
  std::string genotype;
  std::map<std::string, double> perf;
  // Non-empty for entries that could not be parsed or evaluated.
  std::string error;

  bool ok() const { return error.empty(); }
};

// Derive-mode samples, each evaluated once, sorted by reward (descending,
// stable). Throws Error for n < 1.
std::vector<ArchRecord> Derive(Session& session, int n);
// Entries for a genotype file; the note lists reward and metrics.
std::vector<GenotypeEntry> ToGenotypeEntries(const std::vector<ArchRecord>& records);

// One record per entry, in input order. Unparseable genotypes and missing
// table entries become error records citing the line.
std::vector<ArchRecord> EvalArch(Session& session,
                                 const std::vector<GenotypeEntry>& entries);

// `count` uniform draws from the search space (controller stream).
std::vector<std::string> RandomSample(Session& session, int count);
// `count` explore-mode samples from the session's controller.
std::vector<std::string> ControllerSample(Session& session, int count);

struct FinalTrainOptions {
  int steps = 2000;
  double learning_rate = 0.01;
  int eval_every = 100;
  uint64_t seed = kDefaultSeed;
};

struct FinalTrainResult {
  Genotype genotype;
  nn::Mlp model;
  double initial_mse = 0.0;
  double final_mse = 0.0;
  // (step, held-out MSE)
  std::vector<std::pair<int, double>> curve;
};

// Fresh, unshared weights for a toy-MLP genotype trained with Adam on the
// regression task; MSE is measured on the held-out batch.
FinalTrainResult FinalTrain(const ToyMlpSpace& space, const Genotype& genotype,
                            const SyntheticRegression& dataset,
                            const FinalTrainOptions& options);

// Model file with kind "model/toy_mlp".
void SaveFinalModel(const std::string& path, const ToyMlpSpace& space,
                    const FinalTrainResult& result);
struct LoadedModel {
  Genotype genotype;
  nn::Mlp model;
};
LoadedModel LoadFinalModel(const std::string& path, const ToyMlpSpace& space);
double HeldOutMse(const nn::Mlp& model, const SyntheticRegression& dataset);

// Components needed by final training, read either from a full search
// config or from a final-training config (top-level keys seed, dataset,
// search_space, final_train).
struct FinalSetup {
  std::shared_ptr<SyntheticRegression> dataset;
  std::shared_ptr<ToyMlpSpace> space;
  FinalTrainOptions options;
};
FinalSetup LoadFinalSetup(const ConfigNode& root, const ComponentRegistry& registry);
ComponentSchema FinalTrainSchema();

// Commented default configs.
std::string SampleConfigText(const ComponentRegistry& registry);
std::string FinalSampleConfigText(const ComponentRegistry& registry);

}  // namespace nasforge

#endif  // NASFORGE_ORCHESTRATOR_WORKFLOW_H_
