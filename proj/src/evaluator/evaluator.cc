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

#include "nasforge/evaluator/evaluator.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/search_space/blockwise_space.h"

namespace nasforge {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string_view Unquote(std::string_view s) {
  s = Trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

SyntheticOracle::SyntheticOracle(std::shared_ptr<const SearchSpace> space,
                                 uint64_t seed, Genotype optimum)
    : space_(std::move(space)) {
  Rng rng(Mix64(seed ^ 0x0BAC1EULL));
  for (size_t i = 0; i < space_->decision_count(); ++i) {
    weights_.push_back(rng.Uniform(0.5, 1.5));
  }
  if (optimum.empty()) optimum = space_->RandomRollout(rng).genotype;
  space_->Validate(optimum);
  optimum_ = space_->Canonicalize(optimum);
}

double SyntheticOracle::Accuracy(const Genotype& genotype) const {
  space_->Validate(genotype);
  const Genotype g = space_->Canonicalize(genotype);
  const size_t n = g.size();
  double mismatch = 0.0;
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    total += weights_[i];
    if (g[i] != optimum_[i]) mismatch += weights_[i];
  }
  const double d = total > 0 ? mismatch / total : 0.0;
  double h = 0.0;
  if (n >= 2) {
    int pairs = 0;
    for (size_t i = 0; i + 1 < n; ++i) {
      if (g[i] != optimum_[i] && g[i + 1] != optimum_[i + 1]) ++pairs;
    }
    h = static_cast<double>(pairs) / static_cast<double>(n - 1);
  }
  return (1.0 - d) * (1.0 - 0.1 * h);
}

AccuracyTable AccuracyTable::FromCsv(const SearchSpace& space,
                                     std::string_view text) {
  AccuracyTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    if (!header) {
      if (view != "genotype,accuracy") {
        throw Error("accuracy table line " + std::to_string(line_no) +
                    ": expected header 'genotype,accuracy'");
      }
      header = true;
      continue;
    }
    const size_t comma = view.rfind(',');
    if (comma == std::string_view::npos) {
      throw Error("accuracy table line " + std::to_string(line_no) +
                  ": expected 'genotype,accuracy'");
    }
    const std::string_view value = Trim(view.substr(comma + 1));
    double accuracy = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), accuracy);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error("accuracy table line " + std::to_string(line_no) +
                  ": bad accuracy '" + std::string(value) + "'");
    }
    Genotype g;
    try {
      g = space.Parse(Unquote(view.substr(0, comma)));
    } catch (const Error& e) {
      throw Error("accuracy table line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string key = space.ToString(space.Canonicalize(g));
    if (!table.entries_.emplace(key, accuracy).second) {
      throw Error("accuracy table line " + std::to_string(line_no) +
                  ": duplicate genotype " + key);
    }
  }
  if (!header) throw Error("accuracy table is empty");
  return table;
}

AccuracyTable AccuracyTable::ReadCsv(const SearchSpace& space,
                                     const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open accuracy table " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromCsv(space, buffer.str());
}

std::string AccuracyTable::ToCsv(
    const SearchSpace& space, const std::vector<std::pair<Genotype, double>>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "genotype,accuracy\n";
  for (const auto& [g, acc] : rows) {
    out << '"' << space.ToString(space.Canonicalize(g)) << "\"," << acc << '\n';
  }
  return out.str();
}

double AccuracyTable::Accuracy(const SearchSpace& space,
                               const Genotype& genotype) const {
  const std::string key = space.ToString(space.Canonicalize(genotype));
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw MissingEntryError("genotype not in accuracy table: " + key);
  }
  return it->second;
}

TabularEvaluator::TabularEvaluator(std::shared_ptr<const SearchSpace> space,
                                   std::shared_ptr<const Objective> objective,
                                   TabularOptions options)
    : Evaluator(std::move(space), std::move(objective)), options_(std::move(options)) {
  if (options_.mode == "synthetic") {
    Genotype optimum;
    if (!options_.optimum.empty()) {
      try {
        optimum = space_->Parse(options_.optimum);
      } catch (const GenotypeError& e) {
        throw ConfigError(std::string("tabular: optimum: ") + e.what());
      }
    }
    oracle_.emplace(space_, options_.seed, std::move(optimum));
  } else if (options_.mode == "file") {
    if (options_.path.empty()) throw ConfigError("tabular: file mode needs a path");
    table_ = AccuracyTable::ReadCsv(*space_, options_.path);
  } else {
    throw ConfigError("tabular: mode must be 'synthetic' or 'file', got '" +
                      options_.mode + "'");
  }
  if (!options_.device.empty()) {
    const auto kind = ParseDeviceKind(options_.device);
    if (!kind) {
      throw ConfigError("tabular: device must be gpu_like or fpga_like, got '" +
                        options_.device + "'");
    }
    const auto* blockwise = dynamic_cast<const BlockwiseSpace*>(space_.get());
    if (blockwise == nullptr) {
      throw ConfigError("tabular: hardware metrics need the blockwise space");
    }
    DeviceOptions device_options;
    device_options.kind = *kind;
    device_options.seed = Mix64(options_.seed ^ 0xD371CEULL);
    device_.emplace(device_options);
    profile_ = ProfilePrimitives(*blockwise, *device_);
  }
}

double TabularEvaluator::Accuracy(const Genotype& genotype) const {
  space_->Validate(genotype);
  if (oracle_) return oracle_->Accuracy(genotype);
  return table_->Accuracy(*space_, genotype);
}

void TabularEvaluator::EvaluateRollout(DiscreteRollout& rollout) const {
  rollout.perf.erase(kRewardKey);
  rollout.perf["acc"] = Accuracy(rollout.genotype);
  if (device_) {
    const auto& blockwise = static_cast<const BlockwiseSpace&>(*space_);
    const auto blocks =
        blockwise.BlockFeatures(blockwise.Canonicalize(rollout.genotype), *profile_);
    rollout.perf[device_->metric()] = device_->NetworkCost(blocks);
  }
  objective_->Apply(rollout);
}

SupernetEvaluator::SupernetEvaluator(
    std::shared_ptr<const SearchSpace> space,
    std::shared_ptr<const Objective> objective,
    std::shared_ptr<SupernetWeightsManager> manager,
    std::shared_ptr<const SyntheticRegression> dataset, std::shared_ptr<Rng> rng,
    SupernetEvaluatorOptions options)
    : Evaluator(std::move(space), std::move(objective)),
      manager_(std::move(manager)),
      dataset_(std::move(dataset)),
      rng_(std::move(rng)),
      options_(options) {
  if (manager_ == nullptr) {
    throw ConfigError("supernet evaluator needs the supernet weights manager");
  }
  if (dataset_ == nullptr) {
    throw ConfigError("supernet evaluator needs the synthetic_regression dataset");
  }
  if (options_.update_samples < 1) {
    throw ConfigError("supernet evaluator: update_samples must be >= 1");
  }
  if (rng_ == nullptr) rng_ = std::make_shared<Rng>();
}

void SupernetEvaluator::EvaluateRollout(DiscreteRollout& rollout) const {
  auto candidate = std::dynamic_pointer_cast<CandidateNet>(rollout.candidate);
  if (candidate == nullptr) {
    candidate = manager_->Assemble(rollout.genotype);
    rollout.candidate = candidate;
  } else if (candidate->genotype() != rollout.genotype) {
    throw GenotypeError("candidate does not match the rollout genotype");
  }
  const Batch& eval = dataset_->EvalBatch();
  const double mse = candidate->Loss(eval.x, eval.y);
  rollout.perf.erase(kRewardKey);
  rollout.perf["mse"] = mse;
  rollout.perf["acc"] = 1.0 - mse / dataset_->EvalTargetVariance();
  objective_->Apply(rollout);
}

UpdateStats SupernetEvaluator::UpdateEvaluator(Controller& controller) {
  const std::vector<DiscreteRollout> rollouts =
      controller.Sample(options_.update_samples);
  double total = 0.0;
  for (const auto& r : rollouts) {
    auto candidate = manager_->Assemble(r.genotype);
    const Batch batch = dataset_->TrainBatch(*rng_);
    total += candidate->TrainStep(batch.x, batch.y, manager_->learning_rate());
  }
  return {{"loss", total / static_cast<double>(rollouts.size())}};
}

}  // namespace nasforge
