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

// nasforge command-line driver.
//
// Exit codes: 0 success, 1 usage error, 2 configuration or validation
// error, 3 runtime failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/core/config.h"
#include "nasforge/core/registry.h"
#include "nasforge/core/session.h"
#include "nasforge/hwcost/pipeline.h"
#include "nasforge/orchestrator/checkpoint.h"
#include "nasforge/orchestrator/genotype_file.h"
#include "nasforge/orchestrator/search.h"
#include "nasforge/orchestrator/trainer.h"
#include "nasforge/orchestrator/workflow.h"
#include "nasforge/search_space/blockwise_space.h"

namespace nasforge {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonArgs {
  std::string config;
  std::optional<int64_t> seed;
};

void AddCommon(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config, "YAML configuration file")
      ->required();
  cmd->add_option("--seed", args.seed, "override the root seed");
}

ConfigNode ReadRoot(const CommonArgs& args) {
  ConfigNode root = ReadConfigFile(args.config);
  if (args.seed) {
    if (*args.seed < 0) throw ValidationError("seed", "expected a non-negative int");
    if (!root.IsMapping()) throw ValidationError("<root>", "expected a mapping");
    root.Set("seed", ConfigNode(*args.seed));
  }
  return root;
}

Session OpenSession(const CommonArgs& args) {
  const ComponentRegistry& registry = ComponentRegistry::Global();
  return AssembleSession(Config::FromNode(ReadRoot(args), registry), registry);
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

// Accepts an epoch directory or a root holding epoch_<k> directories.
std::optional<std::string> ResolveCheckpoint(const std::string& path) {
  if (fs::exists(fs::path(path) / "meta.json")) return path;
  if (auto epoch = LatestCheckpointEpoch(path)) return EpochDirectory(path, *epoch);
  return std::nullopt;
}

// Explicit paths must resolve; the default root may be absent.
void RestoreSession(Session& session, const std::string& explicit_path) {
  std::string root = explicit_path.empty() ? DefaultCheckpointRoot() : explicit_path;
  std::optional<std::string> dir = ResolveCheckpoint(root);
  if (!dir) {
    if (!explicit_path.empty()) throw CheckpointError("no checkpoint found in " + root);
    std::cerr << "note: no checkpoint in " << root
              << "; using freshly initialized components\n";
    return;
  }
  CheckpointMeta meta = LoadCheckpoint(session, *dir);
  std::cerr << "loaded checkpoint " << *dir << " (epoch " << meta.epoch << ")\n";
}

std::string FormatPerf(const std::map<std::string, double>& perf) {
  std::string out;
  for (const auto& [k, v] : perf) {
    out += fmt::format("{}{}={:.6g}", out.empty() ? "" : " ", k, v);
  }
  return out;
}

// search / mpsearch

struct SearchArgs {
  CommonArgs common;
  std::optional<int> epochs;
  std::optional<int> samples;
  std::string log_path;
  std::string checkpoint_dir;
  bool resume = false;
  int stop_after_epoch = -1;
  std::optional<int> workers;
  std::optional<int> max_inflight;
};

void AddSearch(CLI::App* cmd, SearchArgs& args, bool async) {
  AddCommon(cmd, args.common);
  cmd->add_option("--epochs", args.epochs, "override trainer.epochs");
  cmd->add_option("--samples", args.samples, "override trainer.samples_per_epoch");
  cmd->add_option("--log", args.log_path, "JSON-lines evaluation log");
  cmd->add_option("--checkpoint-dir", args.checkpoint_dir,
                  "checkpoint root (default $NASFORGE_HOME/ckpt)");
  cmd->add_flag("--resume", args.resume, "continue from the latest checkpoint");
  cmd->add_option("--stop-after-epoch", args.stop_after_epoch,
                  "stop after this epoch as if interrupted");
  if (async) {
    cmd->add_option("--workers", args.workers, "evaluation threads");
    cmd->add_option("--max-inflight", args.max_inflight, "outstanding rollouts");
  }
}

int RunSearchCommand(const SearchArgs& args, bool async) {
  Session session = OpenSession(args.common);
  TrainerConfig config = session.trainer().config();
  if (args.epochs) {
    if (*args.epochs < 1) throw ValidationError("trainer.epochs", "must be >= 1");
    config.epochs = *args.epochs;
  }
  if (args.samples) {
    if (*args.samples < 0) {
      throw ValidationError("trainer.samples_per_epoch", "must be >= 0");
    }
    config.samples_per_epoch = *args.samples;
  }
  if (config.checkpoint_every == 0) config.checkpoint_every = config.epochs;

  SearchOptions options;
  options.log_path = args.log_path;
  options.checkpoint_dir =
      args.checkpoint_dir.empty() ? DefaultCheckpointRoot() : args.checkpoint_dir;
  options.resume = args.resume;
  options.stop_after_epoch = args.stop_after_epoch;

  auto started = std::chrono::steady_clock::now();
  SearchReport report;
  if (async || session.trainer().is_async()) {
    AsyncConfig a = session.trainer().is_async() ? session.trainer().async_config()
                                                 : AsyncConfig{4, 0};
    if (args.workers) a.num_workers = *args.workers;
    if (args.max_inflight) a.max_inflight = *args.max_inflight;
    if (a.num_workers < 1) throw ValidationError("trainer.num_workers", "must be >= 1");
    if (a.max_inflight < 0) {
      throw ValidationError("trainer.max_inflight", "must be >= 0");
    }
    report = AsyncSearch(session, config, a, options);
  } else {
    report = SimpleSearch(session, config, options);
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 started)
                       .count();

  // A final checkpoint lets derive pick up the searched state.
  std::optional<int> latest = LatestCheckpointEpoch(options.checkpoint_dir);
  if (!latest || *latest != report.last_epoch) {
    CheckpointMeta meta;
    meta.epoch = report.last_epoch;
    meta.evaluations = static_cast<int64_t>(report.evaluations.size());
    meta.has_best = report.has_best;
    meta.best_genotype = report.best_genotype;
    meta.best_reward = report.best_reward;
    meta.max_inflight_observed = report.max_inflight_observed;
    meta.max_staleness = report.max_staleness;
    SaveCheckpoint(session, options.checkpoint_dir, meta);
  }

  for (const auto& e : report.epochs) {
    std::cout << fmt::format("epoch {}: evaluations={} mean_reward={:.6g} best={:.6g}\n",
                             e.epoch, e.evaluations, e.mean_reward, e.best_so_far);
  }
  if (report.has_best) {
    std::cout << fmt::format("best: {} reward={:.6g}\n",
                             session.search_space().ToString(report.best_genotype),
                             report.best_reward);
  }
  std::cout << fmt::format("evaluations={} failed={} time={:.2f}s checkpoint={}\n",
                           report.evaluations.size(), report.failed, seconds,
                           EpochDirectory(options.checkpoint_dir, report.last_epoch));
  return kExitOk;
}

// sampling and derive

struct SampleArgs {
  CommonArgs common;
  int count = 5;
  std::string checkpoint;
  std::string out;
};

int RunRandomSample(const SampleArgs& args) {
  Session session = OpenSession(args.common);
  std::string text;
  for (const auto& g : RandomSample(session, args.count)) text += g + "\n";
  WriteText(args.out, text);
  return kExitOk;
}

int RunSample(const SampleArgs& args) {
  Session session = OpenSession(args.common);
  RestoreSession(session, args.checkpoint);
  std::string text;
  for (const auto& g : ControllerSample(session, args.count)) text += g + "\n";
  WriteText(args.out, text);
  return kExitOk;
}

int RunDerive(const SampleArgs& args, bool count_given) {
  Session session = OpenSession(args.common);
  RestoreSession(session, args.checkpoint);
  int n = count_given ? args.count : session.trainer().config().derive_count;
  std::vector<ArchRecord> records = Derive(session, n);
  WriteText(args.out, EmitGenotypeFile(ToGenotypeEntries(records)));
  return kExitOk;
}

// eval-arch

struct EvalArgs {
  CommonArgs common;
  std::string archs;
  std::string checkpoint;
  std::string out;
};

int RunEvalArch(const EvalArgs& args) {
  Session session = OpenSession(args.common);
  if (!args.checkpoint.empty()) RestoreSession(session, args.checkpoint);
  std::vector<ArchRecord> records = EvalArch(session, ReadGenotypeFile(args.archs));
  int failures = 0;
  std::string text;
  for (const auto& r : records) {
    if (r.ok()) {
      text += fmt::format("line {}: {} {}\n", r.line, r.genotype, FormatPerf(r.perf));
    } else {
      ++failures;
      text += fmt::format("error: {}\n", r.error);
    }
  }
  WriteText(args.out, text);
  if (failures > 0) {
    std::cerr << failures << " of " << records.size() << " entries failed\n";
    return kExitRuntime;
  }
  return kExitOk;
}

// final training

struct TrainArgs {
  CommonArgs common;
  std::string genotype;
  std::string archs;
  std::optional<int> steps;
  std::string model_out;
};

FinalSetup OpenFinal(const CommonArgs& args) {
  return LoadFinalSetup(ReadRoot(args), ComponentRegistry::Global());
}

int RunTrain(const TrainArgs& args) {
  FinalSetup setup = OpenFinal(args.common);
  if (args.steps) {
    if (*args.steps < 0) throw ValidationError("final_train.steps", "must be >= 0");
    setup.options.steps = *args.steps;
  }
  std::string text = args.genotype;
  if (text.empty()) {
    std::vector<GenotypeEntry> entries = ReadGenotypeFile(args.archs);
    if (entries.empty()) throw Error(args.archs + ": no genotypes");
    if (!entries.front().error.empty()) {
      throw GenotypeError(fmt::format("{} line {}: {}", args.archs,
                                      entries.front().line, entries.front().error));
    }
    text = entries.front().genotype;
  }
  Genotype genotype = setup.space->Canonicalize(setup.space->Parse(text));
  auto started = std::chrono::steady_clock::now();
  FinalTrainResult result = FinalTrain(*setup.space, genotype, *setup.dataset,
                                       setup.options);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                 started)
                       .count();
  std::cout << "genotype: " << setup.space->ToString(genotype) << "\n";
  for (const auto& [step, mse] : result.curve) {
    std::cout << fmt::format("step {} held_out_mse={:.6g}\n", step, mse);
  }
  std::cout << fmt::format("final held_out_mse={:.6g} parameters={} time={:.2f}s\n",
                           result.final_mse, result.model.ParameterCount(), seconds);
  if (!args.model_out.empty()) {
    SaveFinalModel(args.model_out, *setup.space, result);
    std::cout << "model: " << args.model_out << "\n";
  }
  return kExitOk;
}

struct TestArgs {
  CommonArgs common;
  std::string model;
};

int RunTest(const TestArgs& args) {
  FinalSetup setup = OpenFinal(args.common);
  LoadedModel loaded = LoadFinalModel(args.model, *setup.space);
  std::cout << "genotype: " << setup.space->ToString(loaded.genotype) << "\n";
  std::cout << fmt::format("held_out_mse={:.6g}\n",
                           HeldOutMse(loaded.model, *setup.dataset));
  return kExitOk;
}

// registry and generated configs

int RunRegistry() {
  for (const RegistryEntry* e : ComponentRegistry::Global().Entries()) {
    std::cout << fmt::format("{:<15} {:<21} {}\n", ComponentKindName(e->kind), e->name,
                             e->description);
  }
  return kExitOk;
}

// hardware cost models

struct HwcostArgs {
  std::string device = "gpu_like";
  uint64_t seed = kDefaultSeed;
  int n_train = 2000;
  int n_test = 1000;
  std::vector<std::string> models;
  int epochs = 200;
  std::string csv;
  std::string scatter;
};

int RunHwcost(const HwcostArgs& args) {
  PipelineOptions options;
  auto kind = ParseDeviceKind(args.device);
  if (!kind) throw ValidationError("device", "expected gpu_like or fpga_like");
  options.device.kind = *kind;
  options.seed = args.seed;
  options.n_train = args.n_train;
  options.n_test = args.n_test;
  options.model_options.epochs = args.epochs;
  if (!args.models.empty()) {
    options.models.clear();
    for (const auto& name : args.models) {
      auto m = ParseCostModelKind(name);
      if (!m) throw ValidationError("models", "unknown cost model '" + name + "'");
      options.models.push_back(*m);
    }
  }
  BlockwiseSpace space{BlockwiseSpaceOptions{}};
  PipelineResult result = RunCostPipeline(space, options);
  std::cout << result.report.ToText();
  if (!args.csv.empty()) WriteText(args.csv, result.report.ToCsv());
  if (!args.scatter.empty()) {
    std::vector<const CostModel*> models = result.ModelPointers();
    WriteText(args.scatter, ScatterCsv(models, result.dataset));
  }
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"nasforge: modular neural architecture search"};
  app.require_subcommand(1);

  SearchArgs search_args;
  AddSearch(app.add_subcommand("search", "Search with the configured trainer"),
            search_args, false);
  SearchArgs mpsearch_args;
  AddSearch(app.add_subcommand("mpsearch", "Search with parallel evaluation"),
            mpsearch_args, true);

  SampleArgs random_args;
  CLI::App* random_cmd =
      app.add_subcommand("random-sample", "Draw uniform genotypes from the search space");
  AddCommon(random_cmd, random_args.common);
  random_cmd->add_option("-n,--count", random_args.count, "number of genotypes");
  random_cmd->add_option("-o,--out", random_args.out, "output file (default stdout)");

  SampleArgs sample_args;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Sample genotypes from a checkpointed controller");
  AddCommon(sample_cmd, sample_args.common);
  sample_cmd->add_option("-n,--count", sample_args.count, "number of genotypes");
  sample_cmd->add_option("--checkpoint", sample_args.checkpoint,
                         "checkpoint directory or root");
  sample_cmd->add_option("-o,--out", sample_args.out, "output file (default stdout)");

  SampleArgs derive_args;
  CLI::App* derive_cmd =
      app.add_subcommand("derive", "Derive architectures from trained components");
  AddCommon(derive_cmd, derive_args.common);
  CLI::Option* derive_n =
      derive_cmd->add_option("-n,--count", derive_args.count,
                             "number of architectures (default trainer.derive_count)");
  derive_cmd->add_option("--checkpoint", derive_args.checkpoint,
                         "checkpoint directory or root");
  derive_cmd->add_option("-o,--out", derive_args.out, "genotype file (default stdout)");

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval-arch", "Evaluate the genotypes listed in a YAML file");
  AddCommon(eval_cmd, eval_args.common);
  eval_cmd->add_option("archs", eval_args.archs, "genotype file")->required();
  eval_cmd->add_option("--checkpoint", eval_args.checkpoint,
                       "restore evaluator state from a checkpoint");
  eval_cmd->add_option("-o,--out", eval_args.out, "report file (default stdout)");

  TrainArgs train_args;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train one genotype from scratch");
  AddCommon(train_cmd, train_args.common);
  auto* genotype_opt =
      train_cmd->add_option("--genotype", train_args.genotype, "genotype string");
  auto* archs_opt = train_cmd->add_option("--archs", train_args.archs,
                                          "genotype file; its first entry is trained");
  genotype_opt->excludes(archs_opt);
  train_cmd->add_option("--steps", train_args.steps, "override final_train.steps");
  train_cmd->add_option("-o,--model-out", train_args.model_out, "save the model");

  TestArgs test_args;
  CLI::App* test_cmd =
      app.add_subcommand("test", "Held-out MSE of a trained model");
  AddCommon(test_cmd, test_args.common);
  test_cmd->add_option("-m,--model", test_args.model, "model file")->required();

  std::string sample_out;
  CLI::App* gen_cmd =
      app.add_subcommand("gen-sample-config", "Dump the sample search configuration");
  gen_cmd->add_option("-o,--out", sample_out, "output file (default stdout)");
  std::string final_out;
  CLI::App* gen_final_cmd = app.add_subcommand(
      "gen-final-sample-config", "Dump the sample final-training configuration");
  gen_final_cmd->add_option("-o,--out", final_out, "output file (default stdout)");

  CLI::App* registry_cmd = app.add_subcommand("registry", "Print registry information");

  HwcostArgs hw_args;
  CLI::App* hw_cmd =
      app.add_subcommand("hwcost", "Fit and compare hardware cost models");
  hw_cmd->add_option("--device", hw_args.device, "gpu_like or fpga_like");
  hw_cmd->add_option("--seed", hw_args.seed, "pipeline seed");
  hw_cmd->add_option("--n-train", hw_args.n_train, "training networks");
  hw_cmd->add_option("--n-test", hw_args.n_test, "test networks");
  hw_cmd->add_option("--models", hw_args.models, "subset of sum linear1 linear2 mlp lstm");
  hw_cmd->add_option("--epochs", hw_args.epochs, "epochs for the neural models");
  hw_cmd->add_option("--csv", hw_args.csv, "write the comparison as CSV");
  hw_cmd->add_option("--scatter", hw_args.scatter, "write predictions vs truth as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ComponentRegistry& registry = ComponentRegistry::Global();
    if (app.got_subcommand("search")) return RunSearchCommand(search_args, false);
    if (app.got_subcommand("mpsearch")) return RunSearchCommand(mpsearch_args, true);
    if (app.got_subcommand("random-sample")) return RunRandomSample(random_args);
    if (app.got_subcommand("sample")) return RunSample(sample_args);
    if (app.got_subcommand("derive")) return RunDerive(derive_args, derive_n->count() > 0);
    if (app.got_subcommand("eval-arch")) return RunEvalArch(eval_args);
    if (app.got_subcommand("train")) {
      if (train_args.genotype.empty() && train_args.archs.empty()) {
        std::cerr << "train: one of --genotype or --archs is required\n";
        return kExitUsage;
      }
      return RunTrain(train_args);
    }
    if (app.got_subcommand("test")) return RunTest(test_args);
    if (app.got_subcommand("gen-sample-config")) {
      WriteText(sample_out, SampleConfigText(registry));
      return kExitOk;
    }
    if (app.got_subcommand("gen-final-sample-config")) {
      WriteText(final_out, FinalSampleConfigText(registry));
      return kExitOk;
    }
    if (registry_cmd->parsed()) return RunRegistry();
    if (hw_cmd->parsed()) return RunHwcost(hw_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace nasforge

int main(int argc, char** argv) { return nasforge::Main(argc, argv); }
