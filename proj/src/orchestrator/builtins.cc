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

#include <memory>

#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/controller/evo_controller.h"
#include "nasforge/controller/predictor_controller.h"
#include "nasforge/controller/rl_controller.h"
#include "nasforge/controller/sa_controller.h"
#include "nasforge/core/registry.h"
#include "nasforge/core/session.h"
#include "nasforge/evaluator/dataset.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/evaluator/objective.h"
#include "nasforge/evaluator/weights_manager.h"
#include "nasforge/orchestrator/trainer.h"
#include "nasforge/search_space/blockwise_space.h"
#include "nasforge/search_space/cell_space.h"
#include "nasforge/search_space/toy_mlp_space.h"

namespace nasforge {
namespace {

using K = ComponentKind;
using T = ParamType;
using Seq = ConfigNode::Sequence;

ConfigNode Ints(std::initializer_list<int> values) {
  Seq out;
  for (int v : values) out.emplace_back(v);
  return ConfigNode(std::move(out));
}

ConfigNode Strings(std::initializer_list<const char*> values) {
  Seq out;
  for (const char* v : values) out.emplace_back(v);
  return ConfigNode(std::move(out));
}

ConfigNode RealMap(std::initializer_list<std::pair<const char*, double>> values) {
  ConfigNode::Mapping out;
  for (const auto& [k, v] : values) out.emplace_back(k, ConfigNode(v));
  return ConfigNode(std::move(out));
}

std::vector<int> IntList(const ComponentParams& p, std::string_view key) {
  std::vector<int> out;
  for (int64_t v : p.GetIntList(key)) {
    if (v < 1) throw ValidationError(p.KeyPath(key), "entries must be >= 1");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int Count(const ComponentParams& p, std::string_view key, int min) {
  return static_cast<int>(p.GetIntAtLeast(key, min));
}

template <typename To>
std::shared_ptr<To> Require(std::shared_ptr<Component> c, const char* message) {
  auto typed = std::dynamic_pointer_cast<To>(std::move(c));
  if (typed == nullptr) throw ConfigError(message);
  return typed;
}

void RegisterDatasets(ComponentRegistry& r) {
  r.Register(
      K::kDataset, "synthetic_regression",
      {{{"input_dim", T::kInt, 4, "input features"},
        {"output_dim", T::kInt, 1, "regression targets"},
        {"batch_size", T::kInt, 32, "training batch size"},
        {"eval_size", T::kInt, 256, "fixed held-out batch size"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        SyntheticRegressionOptions o;
        o.input_dim = Count(p, "input_dim", 1);
        o.output_dim = Count(p, "output_dim", 1);
        o.batch_size = Count(p, "batch_size", 1);
        o.eval_size = Count(p, "eval_size", 2);
        o.seed = ctx.seed();
        return std::make_shared<SyntheticRegression>(o);
      },
      "y = sin(Wx) with a seed-derived W");
}

void RegisterObjectives(ComponentRegistry& r) {
  r.Register(
      K::kObjective, "weighted",
      {{{"weights", T::kRealMap, RealMap({{"acc", 1.0}}), "metric coefficients"},
        {"constraints", T::kRealMap, ConfigNode::EmptyMapping(),
         "metric upper bounds"},
        {"penalty", T::kReal, -1.0, "reward when a constraint is violated"}}},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        return std::make_shared<Objective>(p.GetRealMap("weights"),
                                           p.GetRealMap("constraints"),
                                           p.GetReal("penalty"));
      },
      "weighted sum of metrics with hard constraints");
}

void RegisterSearchSpaces(ComponentRegistry& r) {
  r.Register(
      K::kSearchSpace, "cell",
      {{{"num_nodes", T::kInt, 2, "intermediate nodes"},
        {"ops", T::kStringList, Strings({"skip", "conv3", "conv5"}),
         "operation names"}}},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        return std::make_shared<CellSpace>(Count(p, "num_nodes", 1),
                                           p.GetStringList("ops"));
      },
      "cell with two (input, op) edges per node");
  r.Register(
      K::kSearchSpace, "blockwise",
      {{{"depth_choices", T::kIntList, Ints({2, 3, 4}), "blocks per stage"},
        {"expansion_choices", T::kIntList, Ints({3, 4, 6}), "expansion ratios"},
        {"kernel_choices", T::kIntList, Ints({3, 5, 7}), "kernel sizes"},
        {"stage_channels", T::kIntList, Ints({16, 24, 40, 80, 160}),
         "output channels per stage"},
        {"stage_strides", T::kIntList, Ints({2, 2, 2, 1, 2}), "stride per stage"},
        {"stem_channels", T::kInt, 16, "channels entering stage 1"},
        {"resolution", T::kInt, 32, "input height and width"}}},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        BlockwiseSpaceOptions o;
        o.depth_choices = IntList(p, "depth_choices");
        o.expansion_choices = IntList(p, "expansion_choices");
        o.kernel_choices = IntList(p, "kernel_choices");
        o.stage_channels = IntList(p, "stage_channels");
        o.stage_strides = IntList(p, "stage_strides");
        o.stem_channels = Count(p, "stem_channels", 1);
        o.resolution = Count(p, "resolution", 1);
        return std::make_shared<BlockwiseSpace>(o);
      },
      "inverted-bottleneck stages with depth, expansion and kernel choices");
  r.Register(
      K::kSearchSpace, "toy_mlp",
      {{{"num_layers", T::kInt, 3, "hidden layers"},
        {"widths", T::kIntList, Ints({8, 16, 32}), "width choices"},
        {"activations", T::kStringList, Strings({"relu", "tanh"}),
         "activation choices"}}},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        return std::make_shared<ToyMlpSpace>(Count(p, "num_layers", 1),
                                             IntList(p, "widths"),
                                             p.GetStringList("activations"));
      },
      "per-layer width and activation");
  r.Register(
      K::kSearchSpace, "categorical",
      {{{"cardinalities", T::kIntList, Ints({2}), "choices per decision"}}},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        return std::make_shared<CategoricalSpace>(IntList(p, "cardinalities"));
      },
      "independent categorical decisions");
}

void RegisterWeightsManagers(ComponentRegistry& r) {
  r.Register(
      K::kWeightsManager, "none", {},
      [](const ComponentParams&, BuildContext& ctx) -> std::shared_ptr<Component> {
        return std::make_shared<NullWeightsManager>(ctx.search_space());
      },
      "no weights; for oracle evaluators");
  r.Register(
      K::kWeightsManager, "supernet",
      {{{"learning_rate", T::kReal, 0.05, "SGD step size for candidate updates"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        auto space = Require<ToyMlpSpace>(
            ctx.search_space(), "supernet weights manager needs the toy_mlp space");
        auto dataset = Require<SyntheticRegression>(
            ctx.dataset(), "supernet weights manager needs synthetic_regression");
        return std::make_shared<SupernetWeightsManager>(
            space, dataset->input_dim(), dataset->output_dim(),
            p.GetRealInRange("learning_rate", 1e-12, 1e6),
            *ctx.Stream(K::kWeightsManager));
      },
      "shared maximal-width weights with prefix slicing");
}

void RegisterEvaluators(ComponentRegistry& r) {
  r.Register(
      K::kEvaluator, "tabular",
      {{{"mode", T::kString, "synthetic", "synthetic or file"},
        {"path", T::kString, "", "genotype,accuracy CSV for file mode"},
        {"optimum", T::kString, "", "optimum genotype (synthetic; empty = seeded)"},
        {"device", T::kString, "", "simulated hardware: gpu_like, fpga_like or empty"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        TabularOptions o;
        o.mode = p.GetString("mode");
        o.path = p.GetString("path");
        o.optimum = p.GetString("optimum");
        o.device = p.GetString("device");
        o.seed = ctx.seed();
        return std::make_shared<TabularEvaluator>(ctx.search_space(),
                                                  ctx.objective(), o);
      },
      "deterministic accuracy oracle");
  r.Register(
      K::kEvaluator, "supernet",
      {{{"update_samples", T::kInt, 4, "rollouts sampled per update call"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        auto manager = Require<SupernetWeightsManager>(
            ctx.weights_manager(), "supernet evaluator needs the supernet weights manager");
        auto dataset = Require<SyntheticRegression>(
            ctx.dataset(), "supernet evaluator needs synthetic_regression");
        SupernetEvaluatorOptions o;
        o.update_samples = Count(p, "update_samples", 1);
        return std::make_shared<SupernetEvaluator>(ctx.search_space(), ctx.objective(),
                                                   manager, dataset,
                                                   ctx.Stream(K::kEvaluator), o);
      },
      "shared-weight candidates scored on held-out regression data");
}

void RegisterControllers(ComponentRegistry& r) {
  r.Register(
      K::kController, "random", {},
      [](const ComponentParams&, BuildContext& ctx) -> std::shared_ptr<Component> {
        return std::make_shared<RandomController>(ctx.search_space(),
                                                  ctx.Stream(K::kController));
      },
      "uniform sampling");
  r.Register(
      K::kController, "sa",
      {{{"reward_scale", T::kReal, 1.0, "initial temperature is 0.1 x this"},
        {"cooling", T::kReal, 0.98, "temperature factor per proposal"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        SaOptions o;
        o.initial_temperature = 0.1 * p.GetRealInRange("reward_scale", 1e-12, 1e12);
        o.cooling = p.GetRealInRange("cooling", 1e-12, 1.0 - 1e-12);
        return std::make_shared<SaController>(ctx.search_space(),
                                              ctx.Stream(K::kController), o);
      },
      "simulated annealing");
  r.Register(
      K::kController, "evo",
      {{{"population_size", T::kInt, 50, "population capacity"},
        {"tournament_size", T::kInt, 10, "tournament sample size"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        EvoOptions o;
        o.population_size = Count(p, "population_size", 1);
        o.tournament_size = Count(p, "tournament_size", 1);
        return std::make_shared<EvoController>(ctx.search_space(),
                                               ctx.Stream(K::kController), o);
      },
      "aging evolution");
  r.Register(
      K::kController, "rl",
      {{{"hidden_size", T::kInt, 64, "LSTM hidden units"},
        {"embedding_size", T::kInt, 16, "decision embedding size"},
        {"learning_rate", T::kReal, 0.001, "Adam step size"},
        {"entropy_weight", T::kReal, 0.01, "entropy bonus"},
        {"baseline_decay", T::kReal, 0.9, "reward baseline decay"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        RlOptions o;
        o.hidden_size = Count(p, "hidden_size", 1);
        o.embedding_size = Count(p, "embedding_size", 1);
        o.learning_rate = p.GetRealInRange("learning_rate", 1e-12, 1e3);
        o.entropy_weight = p.GetRealInRange("entropy_weight", 0.0, 1e6);
        o.baseline_decay = p.GetRealInRange("baseline_decay", 0.0, 1.0 - 1e-12);
        return std::make_shared<RlController>(ctx.search_space(),
                                              ctx.Stream(K::kController), o);
      },
      "LSTM policy trained with REINFORCE");
  r.Register(
      K::kController, "predictor",
      {{{"candidates", T::kInt, 100, "candidates scored per round"},
        {"top_k", T::kInt, 5, "candidates proposed per round"},
        {"hidden", T::kIntList, Ints({32}), "surrogate hidden widths"},
        {"epochs", T::kInt, 50, "surrogate epochs per step"},
        {"learning_rate", T::kReal, 0.01, "surrogate Adam step size"}}},
      [](const ComponentParams& p, BuildContext& ctx) -> std::shared_ptr<Component> {
        PredictorOptions o;
        o.candidates = Count(p, "candidates", 1);
        o.top_k = Count(p, "top_k", 1);
        o.hidden.clear();
        for (int h : IntList(p, "hidden")) o.hidden.push_back(static_cast<size_t>(h));
        o.epochs = Count(p, "epochs", 0);
        o.learning_rate = p.GetRealInRange("learning_rate", 1e-12, 1e3);
        return std::make_shared<PredictorController>(ctx.search_space(),
                                                     ctx.Stream(K::kController), o);
      },
      "MLP surrogate over one-hot genotypes");
}

std::vector<ParamSpec> TrainerParams() {
  return {{"epochs", T::kInt, 1, "search epochs"},
          {"samples_per_epoch", T::kInt, 50, "rollouts evaluated per epoch"},
          {"evaluator_updates_per_epoch", T::kInt, 0, "evaluator updates per epoch"},
          {"derive_count", T::kInt, 5, "architectures derived after search"},
          {"checkpoint_every", T::kInt, 1, "epochs between checkpoints (0 = final only)"}};
}

TrainerConfig ReadTrainerConfig(const ComponentParams& p) {
  TrainerConfig c;
  c.epochs = Count(p, "epochs", 1);
  c.samples_per_epoch = Count(p, "samples_per_epoch", 0);
  c.evaluator_updates_per_epoch = Count(p, "evaluator_updates_per_epoch", 0);
  c.derive_count = Count(p, "derive_count", 0);
  c.checkpoint_every = Count(p, "checkpoint_every", 0);
  return c;
}

void RegisterTrainers(ComponentRegistry& r) {
  r.Register(
      K::kTrainer, "simple", {TrainerParams()},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        return std::make_shared<Trainer>("simple", ReadTrainerConfig(p));
      },
      "serial sample/evaluate/step loop");
  std::vector<ParamSpec> async = TrainerParams();
  async.push_back({"num_workers", T::kInt, 4, "evaluation threads"});
  async.push_back({"max_inflight", T::kInt, 0, "outstanding rollouts (0 = 2 x workers)"});
  r.Register(
      K::kTrainer, "async", {async},
      [](const ComponentParams& p, BuildContext&) -> std::shared_ptr<Component> {
        AsyncConfig a;
        a.num_workers = Count(p, "num_workers", 1);
        a.max_inflight = Count(p, "max_inflight", 0);
        return std::make_shared<Trainer>("async", ReadTrainerConfig(p), a);
      },
      "parallel evaluation, controller updates in completion order");
}

}  // namespace

void RegisterBuiltinComponents(ComponentRegistry& registry) {
  RegisterDatasets(registry);
  RegisterObjectives(registry);
  RegisterSearchSpaces(registry);
  RegisterWeightsManagers(registry);
  RegisterEvaluators(registry);
  RegisterControllers(registry);
  RegisterTrainers(registry);
}

}  // namespace nasforge
