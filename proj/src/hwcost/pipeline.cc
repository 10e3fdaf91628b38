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

#include "nasforge/hwcost/pipeline.h"

#include <cmath>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "nasforge/common/error.h"

namespace nasforge {

std::vector<CostSample> CostDataset::TrainSplit() const {
  std::vector<CostSample> out;
  out.reserve(train.size());
  for (size_t i : train) out.push_back(samples[i]);
  return out;
}

std::vector<CostSample> CostDataset::TestSplit() const {
  std::vector<CostSample> out;
  out.reserve(test.size());
  for (size_t i : test) out.push_back(samples[i]);
  return out;
}

CostDataset BuildCostDataset(const BlockwiseSpace& space,
                             const DeviceSimulator& device,
                             const ProfilingTable& table, int n_train,
                             int n_test, Rng& rng) {
  if (n_train < 1 || n_test < 1) {
    throw Error("cost dataset needs n_train >= 1 and n_test >= 1");
  }
  const auto needed = static_cast<size_t>(n_train) + static_cast<size_t>(n_test);
  if (space.SpaceSize() < static_cast<BigCount>(needed)) {
    throw Error(fmt::format("space holds {} architectures, {} requested",
                            BigCountToString(space.SpaceSize()), needed));
  }
  CostDataset dataset;
  std::set<Genotype> seen;
  const size_t max_draws = needed * 1000;
  for (size_t draws = 0; dataset.samples.size() < needed; ++draws) {
    if (draws >= max_draws) {
      throw Error("could not draw enough distinct architectures");
    }
    Genotype g = space.Canonicalize(space.RandomRollout(rng).genotype);
    if (!seen.insert(g).second) continue;
    CostSample sample;
    sample.blocks = space.BlockFeatures(g, table);
    sample.cost = device.NetworkCost(sample.blocks);
    sample.genotype = std::move(g);
    const size_t index = dataset.samples.size();
    (index < static_cast<size_t>(n_train) ? dataset.train : dataset.test)
        .push_back(index);
    dataset.samples.push_back(std::move(sample));
  }
  return dataset;
}

double EvaluateRmse(const CostModel& model, std::span<const CostSample> test) {
  if (test.empty()) throw Error("rMSE over an empty split");
  double total = 0.0;
  for (const auto& s : test) {
    const double d = model.Predict(s.blocks) - s.cost;
    total += d * d;
  }
  return std::sqrt(total / static_cast<double>(test.size()));
}

const CostReportRow& CostReport::Row(const std::string& model) const {
  for (const auto& row : rows) {
    if (row.model == model) return row;
  }
  throw Error("no report row for model '" + model + "'");
}

std::string CostReport::ToText() const {
  std::string out = fmt::format("device: {}  metric: {}\n", device, metric);
  out += fmt::format("{:<10}{:>14}{:>14}\n", "model", "rmse", "vs_sum");
  for (const auto& row : rows) {
    out += fmt::format("{:<10}{:>14.6f}{:>13.3f}x\n", row.model, row.rmse,
                       row.improvement_vs_sum);
  }
  return out;
}

std::string CostReport::ToCsv() const {
  std::string out = "model,rmse,improvement_vs_sum\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{}\n", row.model, row.rmse, row.improvement_vs_sum);
  }
  return out;
}

CostReport CompareReport(std::span<const CostModel* const> models,
                         const CostDataset& dataset, const std::string& device,
                         const std::string& metric) {
  const std::vector<CostSample> test = dataset.TestSplit();
  CostReport report{device, metric, {}};
  const CostModel* baseline = nullptr;
  for (const CostModel* m : models) {
    if (m->kind() == CostModelKind::kSum) baseline = m;
  }
  if (baseline == nullptr) throw Error("cost report needs the sum model");
  const double baseline_rmse = EvaluateRmse(*baseline, test);
  for (const CostModel* m : models) {
    const double rmse = m == baseline ? baseline_rmse : EvaluateRmse(*m, test);
    report.rows.push_back(
        {m->name(), rmse, rmse > 0 ? baseline_rmse / rmse : INFINITY});
  }
  return report;
}

std::string ScatterCsv(std::span<const CostModel* const> models,
                       const CostDataset& dataset) {
  std::string out = "model,pred,truth\n";
  for (const CostModel* m : models) {
    for (size_t i : dataset.test) {
      const CostSample& s = dataset.samples[i];
      out += fmt::format("{},{},{}\n", m->name(), m->Predict(s.blocks), s.cost);
    }
  }
  return out;
}

std::vector<const CostModel*> PipelineResult::ModelPointers() const {
  std::vector<const CostModel*> out;
  for (const auto& m : models) out.push_back(m.get());
  return out;
}

PipelineResult RunCostPipeline(const BlockwiseSpace& space,
                               const PipelineOptions& options) {
  DeviceOptions device_options = options.device;
  device_options.seed = Mix64(options.seed ^ 0xD371CEULL);
  const DeviceSimulator device(device_options);
  PipelineResult result;
  result.table = ProfilePrimitives(space, device);
  Rng rng(Mix64(options.seed ^ 0xDA7AULL));
  result.dataset = BuildCostDataset(space, device, result.table, options.n_train,
                                    options.n_test, rng);
  const std::vector<CostSample> train = result.dataset.TrainSplit();
  CostModelOptions model_options = options.model_options;
  model_options.seed = Mix64(options.seed ^ 0x30DE1ULL);
  for (CostModelKind kind : options.models) {
    auto model = MakeCostModel(kind, model_options);
    result.fits.push_back(model->Fit(train));
    result.models.push_back(std::move(model));
  }
  const auto pointers = result.ModelPointers();
  result.report =
      CompareReport(pointers, result.dataset, device.name(), device.metric());
  return result;
}

}  // namespace nasforge
