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

#include "nasforge/orchestrator/workflow.h"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/evaluator/weights_manager.h"
#include "nasforge/nn/loss.h"
#include "nasforge/nn/optimizer.h"
#include "nasforge/nn/tensor_io.h"

namespace nasforge {
namespace {

constexpr char kModelKind[] = "model/toy_mlp";

ArchRecord ToRecord(const SearchSpace& space, const DiscreteRollout& rollout) {
  ArchRecord record;
  record.genotype = space.ToString(rollout.genotype);
  record.perf = rollout.perf;
  return record;
}

void EvaluateInPlace(Session& session, DiscreteRollout& rollout) {
  rollout.candidate = session.weights_manager().AssembleCandidate(rollout);
  session.evaluator().EvaluateRollout(rollout);
  rollout.candidate.reset();
}

std::vector<size_t> LayerSizes(const ToyMlpSpace& space, const Genotype& genotype,
                               const SyntheticRegression& dataset) {
  std::vector<size_t> sizes = {static_cast<size_t>(dataset.input_dim())};
  for (int l = 0; l < space.num_layers(); ++l) {
    sizes.push_back(static_cast<size_t>(space.LayerWidth(genotype, l)));
  }
  sizes.push_back(static_cast<size_t>(dataset.output_dim()));
  return sizes;
}

ConfigNode DefaultsNode(const RegistryEntry& entry) {
  ConfigNode node = ConfigNode::EmptyMapping();
  node.Set("type", ConfigNode(entry.name));
  for (const auto& p : entry.schema.params) node.Set(p.name, p.default_value);
  return node;
}

using CommentMap = std::map<std::string, std::string>;

void AddComments(std::string_view kind, const ComponentRegistry& registry,
                 const RegistryEntry& entry, CommentMap& comments) {
  std::string names;
  for (const auto& n : registry.Names(*ParseComponentKind(kind))) {
    names += (names.empty() ? "" : ", ") + n;
  }
  comments[std::string(kind)] = entry.description;
  comments[std::string(kind) + ".type"] = "one of: " + names;
  for (const auto& p : entry.schema.params) {
    comments[std::string(kind) + "." + p.name] = p.doc;
  }
}

std::string Emit(const ConfigNode& root, const CommentMap& comments) {
  return EmitConfigText(root, [&](const std::string& path) {
    auto it = comments.find(path);
    return it == comments.end() ? std::string() : it->second;
  });
}

}  // namespace

std::vector<ArchRecord> Derive(Session& session, int n) {
  if (n < 1) throw Error("derive count must be >= 1");
  std::vector<DiscreteRollout> rollouts =
      session.controller().Sample(n, SampleMode::kDerive);
  std::vector<ArchRecord> records;
  for (auto& rollout : rollouts) {
    EvaluateInPlace(session, rollout);
    records.push_back(ToRecord(session.search_space(), rollout));
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const ArchRecord& a, const ArchRecord& b) {
                     return a.perf.at(kRewardKey) > b.perf.at(kRewardKey);
                   });
  return records;
}

std::vector<GenotypeEntry> ToGenotypeEntries(const std::vector<ArchRecord>& records) {
  std::vector<GenotypeEntry> entries;
  for (const auto& r : records) {
    GenotypeEntry e;
    e.genotype = r.genotype;
    if (!r.ok()) {
      e.note = "error: " + r.error;
    } else {
      auto reward = r.perf.find(kRewardKey);
      if (reward != r.perf.end()) e.note = fmt::format("reward={:.6g}", reward->second);
      for (const auto& [k, v] : r.perf) {
        if (k == kRewardKey) continue;
        e.note += fmt::format("{}{}={:.6g}", e.note.empty() ? "" : " ", k, v);
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ArchRecord> EvalArch(Session& session,
                                 const std::vector<GenotypeEntry>& entries) {
  const SearchSpace& space = session.search_space();
  std::vector<ArchRecord> records;
  for (const auto& entry : entries) {
    ArchRecord record;
    record.line = entry.line;
    record.genotype = entry.genotype;
    if (!entry.error.empty()) {
      record.error = fmt::format("line {}: {}", entry.line, entry.error);
      records.push_back(std::move(record));
      continue;
    }
    try {
      DiscreteRollout rollout;
      rollout.genotype = space.Canonicalize(space.Parse(entry.genotype));
      EvaluateInPlace(session, rollout);
      record.perf = rollout.perf;
    } catch (const Error& e) {
      record.error = fmt::format("line {}: {}", entry.line, e.what());
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<std::string> RandomSample(Session& session, int count) {
  if (count < 1) throw Error("sample count must be >= 1");
  Rng& rng = *session.streams().Get(ComponentKind::kController);
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    const SearchSpace& space = session.search_space();
    out.push_back(space.ToString(space.RandomRollout(rng).genotype));
  }
  return out;
}

std::vector<std::string> ControllerSample(Session& session, int count) {
  if (count < 1) throw Error("sample count must be >= 1");
  std::vector<std::string> out;
  for (const auto& rollout : session.controller().Sample(count)) {
    out.push_back(session.search_space().ToString(rollout.genotype));
  }
  return out;
}

double HeldOutMse(const nn::Mlp& model, const SyntheticRegression& dataset) {
  const Batch& eval = dataset.EvalBatch();
  return nn::Mse(model.Forward(eval.x), eval.y);
}

FinalTrainResult FinalTrain(const ToyMlpSpace& space, const Genotype& genotype,
                            const SyntheticRegression& dataset,
                            const FinalTrainOptions& options) {
  space.Validate(genotype);
  if (options.steps < 0) throw Error("final training steps must be >= 0");
  if (options.eval_every < 1) throw Error("eval_every must be >= 1");
  Rng rng(options.seed);
  std::vector<size_t> sizes = LayerSizes(space, genotype, dataset);
  std::vector<nn::DenseLayer> layers;
  for (int l = 0; l <= space.num_layers(); ++l) {
    nn::Activation act = l < space.num_layers() ? space.LayerActivation(genotype, l)
                                                : nn::Activation::kIdentity;
    layers.push_back(nn::DenseLayer::Initialized(sizes[l], sizes[l + 1], act, rng));
  }

  FinalTrainResult result;
  result.genotype = genotype;
  result.model = nn::Mlp(std::move(layers));
  result.initial_mse = HeldOutMse(result.model, dataset);
  result.curve.emplace_back(0, result.initial_mse);

  nn::Optimizer adam(nn::OptimizerKind::kAdam, options.learning_rate);
  for (int step = 1; step <= options.steps; ++step) {
    Batch batch = dataset.TrainBatch(rng);
    nn::Mlp::Tape tape;
    nn::Tensor2 pred = result.model.Forward(batch.x, &tape);
    nn::Tensor2 grad;
    nn::Mse(pred, batch.y, &grad);
    std::vector<nn::Tensor2> grads = result.model.ZeroGrads();
    result.model.Backward(tape, grad, &grads);
    adam.Step(result.model.Parameters(), grads);
    if (step % options.eval_every == 0 || step == options.steps) {
      result.curve.emplace_back(step, HeldOutMse(result.model, dataset));
    }
  }
  result.final_mse = HeldOutMse(result.model, dataset);
  return result;
}

void SaveFinalModel(const std::string& path, const ToyMlpSpace& space,
                    const FinalTrainResult& result) {
  space.Validate(result.genotype);
  nn::TensorFile file;
  file.kind = kModelKind;
  file.tensors.AddInts("model.genotype", result.genotype);
  result.model.Save("model.mlp.", file.tensors);
  nn::WriteTensorFile(path, file);
}

LoadedModel LoadFinalModel(const std::string& path, const ToyMlpSpace& space) {
  nn::TensorFile file = nn::ReadTensorFile(path);
  if (file.kind != kModelKind) {
    throw CheckpointError(path + ": expected kind '" + kModelKind + "', found '" +
                          file.kind + "'");
  }
  LoadedModel loaded;
  loaded.genotype = file.tensors.GetInts("model.genotype");
  try {
    space.Validate(loaded.genotype);
  } catch (const Error& e) {
    throw CheckpointError(path + ": genotype does not fit the search space: " +
                          e.what());
  }
  loaded.model.Load("model.mlp.", file.tensors);
  if (loaded.model.layers().size() != static_cast<size_t>(space.num_layers() + 1)) {
    throw CheckpointError(path + ": layer count does not match the search space");
  }
  return loaded;
}

ComponentSchema FinalTrainSchema() {
  return {{{"steps", ParamType::kInt, 2000, "Adam steps"},
           {"learning_rate", ParamType::kReal, 0.01, "Adam step size"},
           {"eval_every", ParamType::kInt, 100, "steps between held-out evaluations"}}};
}

FinalSetup LoadFinalSetup(const ConfigNode& root, const ComponentRegistry& registry) {
  if (!root.IsMapping()) throw ValidationError("<root>", "expected a mapping");
  for (const auto& [key, value] : root.AsMapping()) {
    if (key == "seed" || key == "final_train" || ParseComponentKind(key)) continue;
    throw ValidationError(key, "unknown top-level key");
  }
  uint64_t seed = kDefaultSeed;
  if (const ConfigNode* s = root.Find("seed")) {
    if (s->type() != ConfigNode::Type::kInt || s->AsInt() < 0) {
      throw ValidationError("seed", "expected a non-negative int");
    }
    seed = static_cast<uint64_t>(s->AsInt());
  }

  BuildContext ctx(seed, std::make_shared<RngStreams>(seed));
  auto build = [&](ComponentKind kind) {
    const std::string name(ComponentKindName(kind));
    const ConfigNode* subtree = root.Find(name);
    if (subtree == nullptr) throw ValidationError(name, "missing component subtree");
    if (!subtree->IsMapping()) throw ValidationError(name, "expected a mapping");
    const ConfigNode* type = subtree->Find("type");
    if (type == nullptr || type->type() != ConfigNode::Type::kString) {
      throw ValidationError(name + ".type", "missing string 'type'");
    }
    const RegistryEntry& entry = registry.Lookup(kind, type->AsString());
    ComponentParams params = ComponentParams::FromSubtree(name, *subtree, entry.schema);
    std::shared_ptr<Component> built;
    try {
      built = entry.constructor(params, ctx);
    } catch (const ValidationError& e) {
      throw ValidationError(name + ": ", e);
    } catch (const ConfigError& e) {
      throw ConfigError(name + ": " + e.what());
    }
    ctx.Put(kind, built);
    return built;
  };

  FinalSetup setup;
  setup.dataset = std::dynamic_pointer_cast<SyntheticRegression>(
      build(ComponentKind::kDataset));
  if (setup.dataset == nullptr) {
    throw ValidationError("dataset.type", "final training needs synthetic_regression");
  }
  setup.space = std::dynamic_pointer_cast<ToyMlpSpace>(
      build(ComponentKind::kSearchSpace));
  if (setup.space == nullptr) {
    throw ValidationError("search_space.type", "final training needs toy_mlp");
  }

  ComponentSchema schema = FinalTrainSchema();
  const ConfigNode* ft = root.Find("final_train");
  ComponentParams params = ComponentParams::FromSubtree(
      "final_train", ft != nullptr ? *ft : ConfigNode::EmptyMapping(), schema);
  setup.options.steps = static_cast<int>(params.GetIntAtLeast("steps", 0));
  setup.options.learning_rate = params.GetRealInRange("learning_rate", 1e-12, 1e3);
  setup.options.eval_every = static_cast<int>(params.GetIntAtLeast("eval_every", 1));
  setup.options.seed = seed;
  return setup;
}

std::string SampleConfigText(const ComponentRegistry& registry) {
  const std::map<ComponentKind, std::string> defaults = {
      {ComponentKind::kDataset, "synthetic_regression"},
      {ComponentKind::kObjective, "weighted"},
      {ComponentKind::kSearchSpace, "toy_mlp"},
      {ComponentKind::kController, "evo"},
      {ComponentKind::kWeightsManager, "none"},
      {ComponentKind::kEvaluator, "tabular"},
      {ComponentKind::kTrainer, "simple"},
  };
  ConfigNode root = ConfigNode::EmptyMapping();
  CommentMap comments;
  root.Set("seed", ConfigNode(static_cast<int64_t>(kDefaultSeed)));
  comments["seed"] = "root seed for every random stream";
  for (ComponentKind kind : kAllComponentKinds) {
    const RegistryEntry& entry = registry.Lookup(kind, defaults.at(kind));
    std::string name(ComponentKindName(kind));
    root.Set(name, DefaultsNode(entry));
    AddComments(name, registry, entry, comments);
  }
  return Emit(root, comments);
}

std::string FinalSampleConfigText(const ComponentRegistry& registry) {
  ConfigNode root = ConfigNode::EmptyMapping();
  CommentMap comments;
  root.Set("seed", ConfigNode(static_cast<int64_t>(kDefaultSeed)));
  comments["seed"] = "seed for data and weight initialization";
  for (auto [kind, type] : {std::pair{ComponentKind::kDataset, "synthetic_regression"},
                            std::pair{ComponentKind::kSearchSpace, "toy_mlp"}}) {
    const RegistryEntry& entry = registry.Lookup(kind, type);
    std::string name(ComponentKindName(kind));
    root.Set(name, DefaultsNode(entry));
    AddComments(name, registry, entry, comments);
  }
  ConfigNode ft = ConfigNode::EmptyMapping();
  comments["final_train"] = "training of one genotype from scratch";
  for (const auto& p : FinalTrainSchema().params) {
    ft.Set(p.name, p.default_value);
    comments["final_train." + p.name] = p.doc;
  }
  root.Set("final_train", ft);
  return Emit(root, comments);
}

}  // namespace nasforge
