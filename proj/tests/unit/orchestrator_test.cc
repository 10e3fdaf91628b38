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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "nasforge/common/error.h"
#include "nasforge/controller/controller.h"
#include "nasforge/core/config.h"
#include "nasforge/core/registry.h"
#include "nasforge/core/session.h"
#include "nasforge/evaluator/dataset.h"
#include "nasforge/evaluator/evaluator.h"
#include "nasforge/evaluator/weights_manager.h"
#include "nasforge/orchestrator/checkpoint.h"
#include "nasforge/orchestrator/genotype_file.h"
#include "nasforge/orchestrator/search.h"
#include "nasforge/orchestrator/trainer.h"
#include "nasforge/orchestrator/workflow.h"
#include "nasforge/search_space/toy_mlp_space.h"
#include "testing/oracles.h"

namespace nasforge {
namespace {

namespace fs = std::filesystem;

const ComponentRegistry& Registry() { return ComponentRegistry::Global(); }

ConfigNode Mapping(std::initializer_list<std::pair<const char*, ConfigNode>> items) {
  ConfigNode node = ConfigNode::EmptyMapping();
  for (const auto& [key, value] : items) node.Set(key, value);
  return node;
}

// The sample configuration with `edit` applied.
Session Build(const std::function<void(ConfigNode&)>& edit = {}) {
  ConfigNode root = ParseConfigText(SampleConfigText(Registry()));
  if (edit) edit(root);
  return AssembleSession(Config::FromNode(root, Registry()), Registry());
}

void UseCell(ConfigNode& root) {
  root.Set("search_space", Mapping({{"type", ConfigNode("cell")}}));
}

void UseController(ConfigNode& root, const std::string& type) {
  root.Set("controller", Mapping({{"type", ConfigNode(type)}}));
}

void UseAsync(ConfigNode& root, int workers, int max_inflight) {
  ConfigNode trainer = *root.Find("trainer");
  trainer.Set("type", ConfigNode("async"));
  trainer.Set("num_workers", ConfigNode(workers));
  trainer.Set("max_inflight", ConfigNode(max_inflight));
  root.Set("trainer", trainer);
}

void SetTrainer(ConfigNode& root, const char* key, int value) {
  root.Find("trainer")->Set(key, ConfigNode(value));
}

fs::path TempDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("nasforge_orch_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Counts calls across the loop and flags any overlap of controller calls.
struct Probe {
  std::atomic<int> samples{0};
  std::atomic<int> assembles{0};
  std::atomic<int> evaluations{0};
  std::atomic<int> steps{0};
  std::atomic<int> updates{0};
  std::atomic<int> active_controller_calls{0};
  std::atomic<bool> overlap{false};
  std::atomic<bool> order_violation{false};
  std::thread::id owner;

  void EnterController() {
    if (active_controller_calls.fetch_add(1) != 0) overlap = true;
    if (std::this_thread::get_id() != owner) overlap = true;
  }
  void LeaveController() { active_controller_calls.fetch_sub(1); }
};

// Forwards to the configured controller. A priming step on the wrapper
// itself routes every later sample through SampleExplore.
class ProbeController : public Controller {
 public:
  ProbeController(std::shared_ptr<Controller> inner, std::shared_ptr<Probe> probe)
      : Controller(inner->space_ptr(), std::make_shared<Rng>(0)),
        inner_(std::move(inner)),
        probe_(std::move(probe)) {
    DiscreteRollout seed = space().RandomRollout(rng());
    seed.perf[kRewardKey] = -1e9;
    priming_ = true;
    const DiscreteRollout primed[] = {seed};
    Step(primed);
    priming_ = false;
  }

  std::string type_name() const override { return inner_->type_name(); }

 protected:
  std::vector<DiscreteRollout> SampleExplore(int n) override {
    probe_->EnterController();
    auto out = inner_->Sample(n);
    probe_->samples += n;
    std::this_thread::sleep_for(std::chrono::microseconds(20));
    probe_->LeaveController();
    return out;
  }

  std::vector<DiscreteRollout> SampleDerive(int n) const override {
    return inner_->Sample(n, SampleMode::kDerive);
  }

  StepStats DoStep(std::span<const DiscreteRollout> rollouts) override {
    if (priming_) return {};
    probe_->EnterController();
    const int steps = probe_->steps.load() + static_cast<int>(rollouts.size());
    if (steps > probe_->evaluations.load()) probe_->order_violation = true;
    StepStats stats = inner_->Step(rollouts);
    probe_->steps = steps;
    std::this_thread::sleep_for(std::chrono::microseconds(20));
    probe_->LeaveController();
    return stats;
  }

 private:
  std::shared_ptr<Controller> inner_;
  std::shared_ptr<Probe> probe_;
  bool priming_ = false;
};

class ProbeWeightsManager : public WeightsManager {
 public:
  ProbeWeightsManager(std::shared_ptr<WeightsManager> inner, std::shared_ptr<Probe> probe,
                      std::shared_ptr<const SearchSpace> space)
      : WeightsManager(std::move(space)), inner_(std::move(inner)), probe_(std::move(probe)) {}

  std::string type_name() const override { return inner_->type_name(); }
  std::shared_ptr<CandidateHandle> AssembleCandidate(
      const DiscreteRollout& rollout) const override {
    if (probe_->assembles.load() + 1 > probe_->samples.load()) probe_->order_violation = true;
    ++probe_->assembles;
    return inner_->AssembleCandidate(rollout);
  }

 private:
  std::shared_ptr<WeightsManager> inner_;
  std::shared_ptr<Probe> probe_;
};

// Optionally fails: every first attempt on genotypes matching `flaky`, every
// attempt on genotypes matching `broken`.
class ProbeEvaluator : public Evaluator {
 public:
  ProbeEvaluator(std::shared_ptr<Evaluator> inner, std::shared_ptr<Probe> probe,
                 std::shared_ptr<const SearchSpace> space,
                 std::shared_ptr<const Objective> objective)
      : Evaluator(std::move(space), std::move(objective)),
        inner_(std::move(inner)),
        probe_(std::move(probe)) {}

  std::function<bool(const Genotype&)> flaky;
  std::function<bool(const Genotype&)> broken;

  std::string type_name() const override { return inner_->type_name(); }
  bool concurrent_evaluation() const override { return inner_->concurrent_evaluation(); }

  void EvaluateRollout(DiscreteRollout& rollout) const override {
    if (probe_->evaluations.load() + 1 > probe_->assembles.load()) {
      probe_->order_violation = true;
    }
    if (broken && broken(rollout.genotype)) throw Error("injected permanent failure");
    if (flaky && flaky(rollout.genotype)) {
      std::lock_guard lock(mutex_);
      if (failed_once_.insert(rollout.genotype).second) throw Error("injected failure");
    }
    inner_->EvaluateRollout(rollout);
    ++probe_->evaluations;
  }

  UpdateStats UpdateEvaluator(Controller& controller) override {
    ++probe_->updates;
    return inner_->UpdateEvaluator(controller);
  }

 private:
  std::shared_ptr<Evaluator> inner_;
  std::shared_ptr<Probe> probe_;
  mutable std::mutex mutex_;
  mutable std::set<Genotype> failed_once_;
};

std::shared_ptr<Probe> Instrument(Session& session,
                                  std::shared_ptr<ProbeEvaluator>* evaluator_out = nullptr) {
  auto probe = std::make_shared<Probe>();
  probe->owner = std::this_thread::get_id();
  session.set_controller(
      std::make_shared<ProbeController>(session.controller_ptr(), probe));
  session.set_weights_manager(std::make_shared<ProbeWeightsManager>(
      session.weights_manager_ptr(), probe, session.search_space_ptr()));
  auto evaluator = std::make_shared<ProbeEvaluator>(
      session.evaluator_ptr(), probe, session.search_space_ptr(),
      std::shared_ptr<const Objective>(session.evaluator_ptr(),
                                       &session.evaluator().objective()));
  session.set_evaluator(evaluator);
  if (evaluator_out != nullptr) *evaluator_out = evaluator;
  return probe;
}

TEST(SimpleSearchTest, CallCountsMatchTheLoopContract) {
  Session session = Build([](ConfigNode& root) {
    SetTrainer(root, "samples_per_epoch", 5);
    SetTrainer(root, "evaluator_updates_per_epoch", 0);
  });
  auto probe = Instrument(session);
  SearchReport report = RunSearch(session);
  EXPECT_EQ(report.evaluations.size(), 5u);
  EXPECT_EQ(probe->samples, 5);
  EXPECT_EQ(probe->assembles, 5);
  EXPECT_EQ(probe->evaluations, 5);
  EXPECT_EQ(probe->steps, 5);
  EXPECT_EQ(probe->updates, 0);
  EXPECT_FALSE(probe->order_violation);
  EXPECT_FALSE(probe->overlap);
}

TEST(SimpleSearchTest, UpdatesRunAfterEachEpochsSamples) {
  Session session = Build([](ConfigNode& root) {
    SetTrainer(root, "epochs", 3);
    SetTrainer(root, "samples_per_epoch", 4);
    SetTrainer(root, "evaluator_updates_per_epoch", 2);
  });
  auto probe = Instrument(session);
  std::vector<std::pair<int, int>> at_record;
  SearchOptions options;
  options.on_record = [&](const EvaluationRecord&) {
    at_record.emplace_back(probe->evaluations.load(), probe->updates.load());
  };
  RunSearch(session, options);
  EXPECT_EQ(probe->updates, 6);
  ASSERT_EQ(at_record.size(), 12u);
  for (size_t i = 0; i < at_record.size(); ++i) {
    EXPECT_EQ(at_record[i].second, 2 * static_cast<int>(i / 4)) << i;
  }
}

TEST(SimpleSearchTest, BestSoFarIsMonotone) {
  Session session = Build([](ConfigNode& root) {
    SetTrainer(root, "epochs", 5);
    SetTrainer(root, "samples_per_epoch", 20);
  });
  SearchReport report = RunSearch(session);
  ASSERT_EQ(report.epochs.size(), 5u);
  double best = -1e18;
  for (const auto& e : report.epochs) {
    EXPECT_GE(e.best_so_far, best);
    best = e.best_so_far;
  }
  double max_reward = -1e18;
  for (const auto& r : report.evaluations) max_reward = std::max(max_reward, r.reward);
  EXPECT_DOUBLE_EQ(report.best_reward, max_reward);
}

TEST(SimpleSearchTest, ComponentErrorsCarryCoordinates) {
  Session session = Build([](ConfigNode& root) { SetTrainer(root, "samples_per_epoch", 6); });
  std::shared_ptr<ProbeEvaluator> evaluator;
  Instrument(session, &evaluator);
  int seen = 0;
  evaluator->broken = [&](const Genotype&) { return ++seen == 4; };
  try {
    RunSearch(session);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1 step 3"), std::string::npos) << e.what();
  }
}

TEST(SimpleSearchTest, RandomFindsTopTwoPercentOnCellSpace) {
  for (int seed = 1; seed <= 10; ++seed) {
    Session session = Build([&](ConfigNode& root) {
      root.Set("seed", ConfigNode(seed));
      UseCell(root);
      UseController(root, "random");
      SetTrainer(root, "samples_per_epoch", 500);
    });
    SearchReport report = RunSearch(session);
    std::vector<double> scores;
    auto& eval = static_cast<TabularEvaluator&>(session.evaluator());
    session.search_space().ForEachGenotype(
        [&](const Genotype& g) { scores.push_back(eval.Accuracy(g)); });
    EXPECT_LE(testing::RankOf(scores, report.best_reward), 0.02 * scores.size())
        << "seed " << seed;
  }
}

std::multiset<std::pair<std::string, double>> RewardMultiset(const SearchReport& report) {
  std::multiset<std::pair<std::string, double>> out;
  for (const auto& r : report.evaluations) out.emplace(r.genotype_text, r.reward);
  return out;
}

TEST(AsyncSearchTest, OneWorkerReproducesSimpleSearch) {
  auto edit = [](ConfigNode& root) {
    UseCell(root);
    SetTrainer(root, "epochs", 2);
    SetTrainer(root, "samples_per_epoch", 60);
  };
  Session serial = Build(edit);
  Session async = Build([&](ConfigNode& root) {
    edit(root);
    UseAsync(root, 1, 8);
  });
  SearchReport a = RunSearch(serial);
  SearchReport b = RunSearch(async);
  ASSERT_EQ(a.evaluations.size(), b.evaluations.size());
  for (size_t i = 0; i < a.evaluations.size(); ++i) {
    EXPECT_EQ(a.evaluations[i].genotype, b.evaluations[i].genotype) << i;
    EXPECT_EQ(a.evaluations[i].reward, b.evaluations[i].reward) << i;
  }
  EXPECT_EQ(b.max_inflight_observed, 1);
  EXPECT_EQ(b.max_staleness, 0);
  EXPECT_EQ(EmitGenotypeFile(ToGenotypeEntries(Derive(serial, 5))),
            EmitGenotypeFile(ToGenotypeEntries(Derive(async, 5))));
}

TEST(AsyncSearchTest, FourWorkersMatchSerialReevaluation) {
  Session session = Build([](ConfigNode& root) {
    UseCell(root);
    SetTrainer(root, "samples_per_epoch", 200);
    UseAsync(root, 4, 0);
  });
  SearchReport report = RunSearch(session);
  EXPECT_EQ(report.evaluations.size(), 200u);
  std::multiset<std::pair<std::string, double>> serial;
  for (const auto& r : report.evaluations) {
    DiscreteRollout rollout{r.genotype, nullptr, {}};
    session.evaluator().EvaluateRollout(rollout);
    serial.emplace(session.search_space().ToString(r.genotype), rollout.reward());
  }
  EXPECT_EQ(RewardMultiset(report), serial);
}

TEST(AsyncSearchTest, BackpressureBoundsOutstandingRollouts) {
  Session session = Build([](ConfigNode& root) {
    UseCell(root);
    SetTrainer(root, "samples_per_epoch", 100);
    UseAsync(root, 4, 8);
  });
  auto probe = Instrument(session);
  int max_outstanding = 0;
  SearchOptions options;
  options.on_record = [&](const EvaluationRecord& r) {
    EXPECT_LE(r.inflight, 8);
    max_outstanding = std::max(max_outstanding, probe->samples.load() - probe->steps.load());
  };
  SearchReport report = RunSearch(session, options);
  EXPECT_LE(report.max_inflight_observed, 8);
  EXPECT_LE(max_outstanding, 8);
  EXPECT_EQ(report.evaluations.size(), 100u);
}

TEST(AsyncSearchTest, ControllerCallsNeverOverlap) {
  Session session = Build([](ConfigNode& root) {
    UseCell(root);
    UseController(root, "evo");
    SetTrainer(root, "samples_per_epoch", 150);
    UseAsync(root, 4, 8);
  });
  auto probe = Instrument(session);
  RunSearch(session);
  EXPECT_FALSE(probe->overlap);
  EXPECT_FALSE(probe->order_violation);
  EXPECT_EQ(probe->steps, 150);
}

TEST(AsyncSearchTest, FlakyEvaluationsAreRetriedOnce) {
  Session session = Build([](ConfigNode& root) {
    UseCell(root);
    SetTrainer(root, "samples_per_epoch", 60);
    UseAsync(root, 4, 8);
  });
  std::shared_ptr<ProbeEvaluator> evaluator;
  Instrument(session, &evaluator);
  evaluator->flaky = [](const Genotype& g) { return g[1] == 1; };
  evaluator->broken = [](const Genotype& g) { return g[1] == 2 && g[3] == 2; };
  SearchReport report = RunSearch(session);
  EXPECT_EQ(report.evaluations.size(), 60u);
  int failed = 0;
  int retried = 0;
  for (const auto& r : report.evaluations) {
    if (r.genotype[1] == 2 && r.genotype[3] == 2) {
      EXPECT_TRUE(r.failed);
      EXPECT_EQ(r.attempts, 2);
      EXPECT_NE(r.error.find("permanent"), std::string::npos);
      ++failed;
    } else {
      EXPECT_FALSE(r.failed);
      if (r.attempts == 2) ++retried;
    }
  }
  EXPECT_EQ(report.failed, failed);
  EXPECT_GT(failed, 0);
  EXPECT_GT(retried, 0);
}

TEST(AsyncSearchTest, RepeatedStressRunsTerminate) {
  for (int run = 0; run < 10; ++run) {
    Session session = Build([&](ConfigNode& root) {
      root.Set("seed", ConfigNode(100 + run));
      UseCell(root);
      UseController(root, run % 2 ? "evo" : "sa");
      SetTrainer(root, "samples_per_epoch", 200);
      UseAsync(root, 4, 1 + run % 8);
    });
    SearchReport report = RunSearch(session);
    EXPECT_EQ(report.evaluations.size(), 200u);
    EXPECT_EQ(session.controller().step_count(), 200);
  }
}

TEST(AsyncSearchTest, SupernetNeedsSingleWorker) {
  auto edit = [](ConfigNode& root, int workers) {
    root.Set("weights_manager", Mapping({{"type", ConfigNode("supernet")}}));
    root.Set("evaluator", Mapping({{"type", ConfigNode("supernet")}}));
    SetTrainer(root, "samples_per_epoch", 4);
    UseAsync(root, workers, 0);
  };
  Session multi = Build([&](ConfigNode& root) { edit(root, 4); });
  EXPECT_THROW(RunSearch(multi), ConfigError);
  Session single = Build([&](ConfigNode& root) { edit(root, 1); });
  EXPECT_EQ(RunSearch(single).evaluations.size(), 4u);
}

TEST(SearchLogTest, JsonLinesWithSummary) {
  fs::path dir = TempDir("log");
  Session session = Build([](ConfigNode& root) {
    SetTrainer(root, "epochs", 2);
    SetTrainer(root, "samples_per_epoch", 3);
  });
  SearchOptions options;
  options.log_path = (dir / "search.jsonl").string();
  RunSearch(session, options);
  std::ifstream in(options.log_path);
  std::string line;
  int records = 0;
  int summaries = 0;
  bool final_summary = false;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    if (j.contains("genotype")) {
      ++records;
      for (const char* key : {"epoch", "step", "reward", "metrics"}) {
        EXPECT_TRUE(j.contains(key)) << key;
      }
      EXPECT_NO_THROW(session.search_space().Parse(j["genotype"].get<std::string>()));
    } else if (j.contains("epoch_summary")) {
      ++summaries;
    } else {
      final_summary = j.value("summary", false);
    }
  }
  EXPECT_EQ(records, 6);
  EXPECT_EQ(summaries, 2);
  EXPECT_TRUE(final_summary);
  fs::remove_all(dir);
}

std::string DeriveText(Session& session) {
  return EmitGenotypeFile(ToGenotypeEntries(Derive(session, 5)));
}

void CheckResumeEquivalence(const std::string& controller, bool supernet) {
  auto edit = [&](ConfigNode& root) {
    UseController(root, controller);
    SetTrainer(root, "epochs", 4);
    SetTrainer(root, "samples_per_epoch", 15);
    SetTrainer(root, "checkpoint_every", 1);
    if (supernet) {
      root.Set("weights_manager", Mapping({{"type", ConfigNode("supernet")}}));
      root.Set("evaluator", Mapping({{"type", ConfigNode("supernet")}}));
      SetTrainer(root, "evaluator_updates_per_epoch", 3);
    }
  };
  fs::path dir = TempDir("resume_" + controller);
  Session full = Build(edit);
  RunSearch(full);
  const std::string expected = DeriveText(full);

  SearchOptions interrupted;
  interrupted.checkpoint_dir = (dir / "ckpt").string();
  interrupted.stop_after_epoch = 2;
  Session first = Build(edit);
  SearchReport partial = RunSearch(first, interrupted);
  EXPECT_EQ(partial.last_epoch, 2);
  EXPECT_EQ(LatestCheckpointEpoch(interrupted.checkpoint_dir), 2);

  SearchOptions resume;
  resume.checkpoint_dir = interrupted.checkpoint_dir;
  resume.resume = true;
  Session second = Build(edit);
  SearchReport rest = RunSearch(second, resume);
  EXPECT_TRUE(rest.resumed);
  EXPECT_EQ(rest.evaluations.size(), 30u);
  EXPECT_EQ(DeriveText(second), expected) << controller;
  fs::remove_all(dir);
}

TEST(CheckpointTest, ResumeGivesIdenticalDeriveForEveryController) {
  for (const char* c : {"random", "sa", "evo", "rl", "predictor"}) {
    CheckResumeEquivalence(c, false);
  }
}

TEST(CheckpointTest, ResumeRestoresSupernetWeights) { CheckResumeEquivalence("evo", true); }

TEST(CheckpointTest, LayoutAndCorruptionDetection) {
  fs::path dir = TempDir("layout");
  Session session = Build([](ConfigNode& root) { SetTrainer(root, "samples_per_epoch", 5); });
  SearchOptions options;
  options.checkpoint_dir = dir.string();
  RunSearch(session, options);
  const fs::path epoch = EpochDirectory(dir.string(), 1);
  for (const char* f : {"controller.bin", "evaluator.bin", "rng.json", "meta.json"}) {
    EXPECT_TRUE(fs::exists(epoch / f)) << f;
  }
  {
    std::fstream f(epoch / "controller.bin", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    f.put('\x7f');
  }
  Session other = Build();
  EXPECT_THROW(LoadCheckpoint(other, epoch.string()), CheckpointError);
  fs::remove_all(dir);
}

TEST(GenotypeFileTest, ParsesStringsAndMappings) {
  auto entries = ParseGenotypeFile(
      "archs:\n"
      "  - \"mlp(8-relu,8-relu,8-relu)\"\n"
      "  - genotype: \"mlp(16-tanh,8-relu,32-relu)\"\n"
      "    note: best\n"
      "  - {bogus: 1}\n");
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].line, 2);
  EXPECT_EQ(entries[1].note, "best");
  EXPECT_EQ(entries[2].line, 5);
  EXPECT_FALSE(entries[2].error.empty());
  EXPECT_EQ(ParseGenotypeFile(EmitGenotypeFile(entries)).size(), 3u);
}

TEST(GenotypeFileTest, StructuralErrorsCarryLines) {
  EXPECT_THROW(ParseGenotypeFile("names: []\n"), ConfigParseError);
  try {
    ParseGenotypeFile("archs:\n  - a\n  - [b\n");
    FAIL() << "expected ConfigParseError";
  } catch (const ConfigParseError& e) {
    EXPECT_GE(e.line(), 3);
  }
}

TEST(EvalArchTest, PartialFailureReportsEveryEntryInOrder) {
  Session session = Build();
  auto entries = ParseGenotypeFile(
      "archs:\n"
      "  - \"mlp(8-relu,8-relu,8-relu)\"\n"
      "  - \"mlp(16-tanh,8-relu,32-relu)\"\n"
      "  - \"mlp(8-relu,8-relu\"\n"
      "  - \"mlp(32-relu,32-relu,32-relu)\"\n"
      "  - \"mlp(32-tanh,16-tanh,8-tanh)\"\n");
  auto records = EvalArch(session, entries);
  ASSERT_EQ(records.size(), 5u);
  int ok = 0;
  for (const auto& r : records) ok += r.ok();
  EXPECT_EQ(ok, 4);
  EXPECT_FALSE(records[2].ok());
  EXPECT_EQ(records[2].error.rfind("line 4:", 0), 0u) << records[2].error;
  EXPECT_EQ(records[3].genotype, "mlp(32-relu,32-relu,32-relu)");
}

TEST(EvalArchTest, OptimumScoresOne) {
  Session session = Build();
  auto& eval = static_cast<TabularEvaluator&>(session.evaluator());
  const std::string optimum = session.search_space().ToString(eval.oracle()->optimum());
  auto records = EvalArch(session, ParseGenotypeFile("archs: [\"" + optimum + "\"]\n"));
  ASSERT_TRUE(records[0].ok());
  EXPECT_DOUBLE_EQ(records[0].perf.at("acc"), 1.0);
}

TEST(EvalArchTest, MissingTableEntriesDoNotAbort) {
  fs::path dir = TempDir("table");
  Session base = Build();
  const SearchSpace& space = base.search_space();
  Genotype known = space.Parse("mlp(8-relu,8-relu,8-relu)");
  {
    std::ofstream out(dir / "acc.csv");
    out << AccuracyTable::ToCsv(space, {{known, 0.4}});
  }
  Session session = Build([&](ConfigNode& root) {
    root.Find("evaluator")->Set("mode", ConfigNode("file"));
    root.Find("evaluator")->Set("path", ConfigNode((dir / "acc.csv").string()));
  });
  auto records = EvalArch(
      session, ParseGenotypeFile("archs: [\"mlp(8-tanh,8-relu,8-relu)\", "
                                 "\"mlp(8-relu,8-relu,8-relu)\"]\n"));
  ASSERT_EQ(records.size(), 2u);
  EXPECT_FALSE(records[0].ok());
  EXPECT_NE(records[0].error.find("not in accuracy table"), std::string::npos);
  EXPECT_DOUBLE_EQ(records[1].perf.at("acc"), 0.4);
  fs::remove_all(dir);
}

TEST(DeriveTest, SortedParseableAndRepeatable) {
  Session session = Build([](ConfigNode& root) { SetTrainer(root, "samples_per_epoch", 80); });
  SearchReport report = RunSearch(session);
  auto records = Derive(session, 5);
  ASSERT_EQ(records.size(), 5u);
  for (size_t i = 1; i < records.size(); ++i) {
    EXPECT_GE(records[i - 1].perf.at(kRewardKey), records[i].perf.at(kRewardKey));
  }
  EXPECT_EQ(session.search_space().Parse(records[0].genotype), report.best_genotype);
  EXPECT_DOUBLE_EQ(records[0].perf.at(kRewardKey), report.best_reward);
  const std::string text = EmitGenotypeFile(ToGenotypeEntries(records));
  for (const auto& e : ParseGenotypeFile(text)) {
    EXPECT_NO_THROW(session.search_space().Parse(e.genotype));
  }
  EXPECT_EQ(DeriveText(session), DeriveText(session));
  EXPECT_THROW(Derive(session, 0), Error);
}

TEST(SampleTest, RandomSampleStringsParse) {
  Session session = Build();
  auto samples = RandomSample(session, 3);
  ASSERT_EQ(samples.size(), 3u);
  for (const auto& s : samples) EXPECT_NO_THROW(session.search_space().Parse(s));
  EXPECT_EQ(ControllerSample(session, 2).size(), 2u);
}

FinalSetup Final(int steps) {
  ConfigNode root = ParseConfigText(FinalSampleConfigText(Registry()));
  FinalSetup setup = LoadFinalSetup(root, Registry());
  setup.options.steps = steps;
  return setup;
}

TEST(FinalTrainTest, MaxWidthGenotypeLearnsTheTask) {
  FinalSetup setup = Final(2000);
  Genotype g = setup.space->Parse("mlp(32-tanh,32-tanh,32-tanh)");
  FinalTrainResult result = FinalTrain(*setup.space, g, *setup.dataset, setup.options);
  EXPECT_LT(result.final_mse, 0.05);
  ASSERT_FALSE(result.curve.empty());
  EXPECT_EQ(result.curve.front().first, 0);
  EXPECT_EQ(result.curve.back().first, 2000);
  EXPECT_LE(result.curve.back().second, result.curve.front().second);
  EXPECT_DOUBLE_EQ(result.final_mse, HeldOutMse(result.model, *setup.dataset));
}

TEST(FinalTrainTest, DeterministicAndSavable) {
  FinalSetup setup = Final(200);
  Genotype g = setup.space->Parse("mlp(16-relu,8-tanh,32-relu)");
  FinalTrainResult a = FinalTrain(*setup.space, g, *setup.dataset, setup.options);
  FinalTrainResult b = FinalTrain(*setup.space, g, *setup.dataset, setup.options);
  EXPECT_EQ(a.final_mse, b.final_mse);
  fs::path dir = TempDir("final");
  const std::string path = (dir / "model.bin").string();
  SaveFinalModel(path, *setup.space, a);
  LoadedModel loaded = LoadFinalModel(path, *setup.space);
  EXPECT_EQ(loaded.genotype, g);
  EXPECT_EQ(HeldOutMse(loaded.model, *setup.dataset), a.final_mse);
  fs::remove_all(dir);
}

TEST(FinalSetupTest, RejectsUnknownKeysAndNonMlpSpaces) {
  ConfigNode root = ParseConfigText(FinalSampleConfigText(Registry()));
  root.Set("extras", ConfigNode(1));
  EXPECT_THROW(LoadFinalSetup(root, Registry()), ValidationError);
  ConfigNode cell = ParseConfigText(FinalSampleConfigText(Registry()));
  UseCell(cell);
  EXPECT_THROW(LoadFinalSetup(cell, Registry()), ConfigError);
}

}  // namespace
}  // namespace nasforge
