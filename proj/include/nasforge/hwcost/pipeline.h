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

#ifndef NASFORGE_HWCOST_PIPELINE_H_
#define NASFORGE_HWCOST_PIPELINE_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/hwcost/cost_model.h"
#include "nasforge/hwcost/device.h"
#include "nasforge/hwcost/profiling.h"
#include "nasforge/search_space/blockwise_space.h"

namespace nasforge {

// Samples with disjoint train/test index sets (split by genotype).
struct CostDataset {
  std::vector<CostSample> samples;
  std::vector<size_t> train;
  std::vector<size_t> test;

  std::vector<CostSample> TrainSplit() const;
  std::vector<CostSample> TestSplit() const;
};

// n_train + n_test distinct canonical genotypes drawn uniformly; the first
// n_train form the training split. Throws Error when the space cannot
// supply that many distinct genotypes.
CostDataset BuildCostDataset(const BlockwiseSpace& space,
                             const DeviceSimulator& device,
                             const ProfilingTable& table, int n_train,
                             int n_test, Rng& rng);

// Root mean squared error in native units. Throws Error on an empty split.
double EvaluateRmse(const CostModel& model, std::span<const CostSample> test);

struct CostReportRow {
  std::string model;
  double rmse = 0.0;
  // rMSE(sum) / rMSE(model).
  double improvement_vs_sum = 0.0;
};

struct CostReport {
  std::string device;
  std::string metric;
  std::vector<CostReportRow> rows;

  const CostReportRow& Row(const std::string& model) const;
  std::string ToText() const;
  // "model,rmse,improvement_vs_sum".
  std::string ToCsv() const;
};

// Requires a sum model among `models` (it is the baseline).
CostReport CompareReport(std::span<const CostModel* const> models,
                         const CostDataset& dataset, const std::string& device,
                         const std::string& metric);

// "model,pred,truth" rows over the test split.
std::string ScatterCsv(std::span<const CostModel* const> models,
                       const CostDataset& dataset);

struct PipelineOptions {
  DeviceOptions device;
  int n_train = 2000;
  int n_test = 1000;
  std::vector<CostModelKind> models = {CostModelKind::kSum,
                                       CostModelKind::kLinear1,
                                       CostModelKind::kLinear2,
                                       CostModelKind::kMlp,
                                       CostModelKind::kLstm};
  CostModelOptions model_options;
  uint64_t seed = 0;
};

struct PipelineResult {
  ProfilingTable table;
  CostDataset dataset;
  std::vector<std::unique_ptr<CostModel>> models;
  std::vector<FitReport> fits;
  CostReport report;

  std::vector<const CostModel*> ModelPointers() const;
};

// profile -> dataset -> fit -> report, bit-reproducible for fixed seeds.
PipelineResult RunCostPipeline(const BlockwiseSpace& space,
                               const PipelineOptions& options);

}  // namespace nasforge

#endif  // NASFORGE_HWCOST_PIPELINE_H_
