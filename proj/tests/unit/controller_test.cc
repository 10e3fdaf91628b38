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

#include <cmath>
#include <functional>
#include <memory>
#include <set>

#include <gtest/gtest.h>

#include "nasforge/common/error.h"
#include "nasforge/common/rng.h"
#include "nasforge/controller/controller.h"
#include "nasforge/controller/evo_controller.h"
#include "nasforge/controller/predictor_controller.h"
#include "nasforge/controller/rl_controller.h"
#include "nasforge/controller/sa_controller.h"
#include "nasforge/nn/tensor_io.h"
#include "nasforge/search_space/cell_space.h"
#include "nasforge/search_space/search_space.h"
#include "testing/gradcheck.h"

namespace nasforge {
namespace {

using RewardFn = std::function<double(const Genotype&)>;

std::shared_ptr<SearchSpace> Cell() {
  return std::make_shared<CellSpace>(2, std::vector<std::string>{"skip", "conv3", "conv5"});
}

std::shared_ptr<SearchSpace> Categorical(std::vector<int> cards) {
  return std::make_shared<CategoricalSpace>(std::move(cards));
}

// Number of positions equal to zero, a smooth target for every space.
double ZeroCount(const Genotype& g) {
  double s = 0.0;
  for (int v : g) s += v == 0 ? 1.0 : 0.0;
  return s / static_cast<double>(g.size());
}

std::shared_ptr<Controller> Make(const std::string& type, std::shared_ptr<SearchSpace> space,
                                 uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  if (type == "random") return std::make_shared<RandomController>(space, rng);
  if (type == "sa") return std::make_shared<SaController>(space, rng, SaOptions{});
  if (type == "evo") {
    return std::make_shared<EvoController>(space, rng, EvoOptions{10, 3});
  }
  if (type == "rl") {
    RlOptions o;
    o.hidden_size = 8;
    o.embedding_size = 4;
    o.learning_rate = 0.05;
    return std::make_shared<RlController>(space, rng, o);
  }
  PredictorOptions o;
  o.candidates = 20;
  o.top_k = 3;
  o.hidden = {8};
  o.epochs = 5;
  return std::make_shared<PredictorController>(space, rng, o);
}

const std::vector<std::string> kTypes = {"random", "sa", "evo", "rl", "predictor"};

std::vector<DiscreteRollout> Scored(std::vector<DiscreteRollout> rollouts,
                                    const RewardFn& reward) {
  for (auto& r : rollouts) r.perf[kRewardKey] = reward(r.genotype);
  return rollouts;
}

void Drive(Controller& c, int steps, const RewardFn& reward, int batch = 1) {
  for (int i = 0; i < steps; ++i) {
    auto rollouts = Scored(c.Sample(batch), reward);
    c.Step(rollouts);
  }
}

std::string Encoded(const Controller& c) {
  nn::TensorFile f;
  f.kind = "x";
  f.tensors = c.SaveState();
  return nn::EncodeTensorFile(f);
}

TEST(ControllerTest, SampleCountValidated) {
  for (const auto& type : kTypes) {
    auto c = Make(type, Cell(), 1);
    EXPECT_THROW(c->Sample(0), Error) << type;
    EXPECT_EQ(c->Sample(3).size(), 3u) << type;
  }
}

TEST(ControllerTest, SamplesAreValidGenotypes) {
  for (const auto& type : kTypes) {
    auto space = Cell();
    auto c = Make(type, space, 2);
    for (int i = 0; i < 20; ++i) {
      auto rollouts = Scored(c->Sample(2), ZeroCount);
      for (const auto& r : rollouts) ASSERT_TRUE(space->IsValid(r.genotype)) << type;
      c->Step(rollouts);
    }
    for (const auto& r : c->Sample(4, SampleMode::kDerive)) {
      ASSERT_TRUE(space->IsValid(r.genotype)) << type;
    }
  }
}

TEST(ControllerTest, StepWithoutRewardChangesNothing) {
  for (const auto& type : kTypes) {
    auto c = Make(type, Cell(), 3);
    Drive(*c, 5, ZeroCount);
    auto rollouts = Scored(c->Sample(2), ZeroCount);
    const std::string before = Encoded(*c);
    rollouts[1].perf.clear();
    EXPECT_THROW(c->Step(rollouts), Error) << type;
    EXPECT_EQ(c->step_count(), 5) << type;
    EXPECT_EQ(Encoded(*c), before) << type;
  }
}

TEST(ControllerTest, StepRejectsInvalidGenotype) {
  auto c = Make("evo", Cell(), 3);
  DiscreteRollout r;
  r.genotype = {9, 9};
  r.perf[kRewardKey] = 1.0;
  EXPECT_THROW(c->Step(std::vector<DiscreteRollout>{r}), Error);
  EXPECT_EQ(c->step_count(), 0);
}

TEST(ControllerTest, BestSeenIsSortedDistinctAndStable) {
  auto space = Categorical({4});
  auto c = Make("random", space, 4);
  std::vector<DiscreteRollout> rollouts(5);
  const std::vector<std::pair<int, double>> data = {
      {0, 0.5}, {1, 0.9}, {2, 0.5}, {1, 0.9}, {3, 0.1}};
  for (size_t i = 0; i < data.size(); ++i) {
    rollouts[i].genotype = {data[i].first};
    rollouts[i].perf[kRewardKey] = data[i].second;
  }
  c->Step(rollouts);
  const auto& best = c->best_seen();
  ASSERT_EQ(best.size(), 4u);
  EXPECT_EQ(best[0].genotype, Genotype{1});
  EXPECT_EQ(best[1].genotype, Genotype{0});
  EXPECT_EQ(best[2].genotype, Genotype{2});
  EXPECT_EQ(best[3].genotype, Genotype{3});
}

TEST(ControllerTest, DeriveIsDeterministicAndReadOnly) {
  for (const auto& type : kTypes) {
    auto space = Cell();
    auto rng = std::make_shared<Rng>(5);
    auto c = Make(type, space, 5);
    Drive(*c, 12, ZeroCount, 2);
    const std::string before = Encoded(*c);
    auto a = c->Sample(5, SampleMode::kDerive);
    auto b = c->Sample(5, SampleMode::kDerive);
    ASSERT_EQ(a.size(), 5u);
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].genotype, b[i].genotype) << type;
    EXPECT_EQ(Encoded(*c), before) << type;
  }
}

TEST(ControllerTest, DeriveDoesNotConsumeExploreStream) {
  auto space = Cell();
  auto rng_a = std::make_shared<Rng>(6);
  auto rng_b = std::make_shared<Rng>(6);
  EvoController a(space, rng_a, EvoOptions{10, 3});
  EvoController b(space, rng_b, EvoOptions{10, 3});
  Drive(a, 10, ZeroCount);
  Drive(b, 10, ZeroCount);
  a.Sample(3, SampleMode::kDerive);
  EXPECT_EQ(rng_a->State(), rng_b->State());
}

TEST(ControllerTest, SaveLoadRoundTripPerType) {
  for (const auto& type : kTypes) {
    auto space = Cell();
    auto c = Make(type, space, 7);
    Drive(*c, 15, ZeroCount, 2);
    const std::string path =
        ::testing::TempDir() + "/controller_" + type + ".bin";
    c->Save(path);
    auto fresh = Make(type, space, 99);
    fresh->Load(path);
    EXPECT_EQ(Encoded(*fresh), Encoded(*c)) << type;
    EXPECT_EQ(fresh->step_count(), c->step_count()) << type;
    auto da = c->Sample(4, SampleMode::kDerive);
    auto db = fresh->Sample(4, SampleMode::kDerive);
    for (size_t i = 0; i < da.size(); ++i) EXPECT_EQ(da[i].genotype, db[i].genotype) << type;
  }
}

TEST(ControllerTest, LoadOfWrongKindLeavesControllerUnchanged) {
  auto space = Cell();
  auto evo = Make("evo", space, 8);
  Drive(*evo, 5, ZeroCount);
  const std::string path = ::testing::TempDir() + "/controller_sa_kind.bin";
  Make("sa", space, 8)->Save(path);
  const std::string before = Encoded(*evo);
  EXPECT_THROW(evo->Load(path), CheckpointError);
  EXPECT_EQ(Encoded(*evo), before);
}

TEST(ControllerTest, LoadOfCorruptStateLeavesControllerUnchanged) {
  auto space = Cell();
  auto evo = Make("evo", space, 8);
  Drive(*evo, 5, ZeroCount);
  nn::TensorList state = evo->SaveState();
  nn::TensorList broken;
  for (const auto& e : state.entries()) {
    if (e.name != "evo.births") broken.Add(e.name, e.value);
  }
  auto other = Make("evo", space, 9);
  Drive(*other, 3, ZeroCount);
  const std::string before = Encoded(*other);
  EXPECT_THROW(other->LoadState(broken), CheckpointError);
  EXPECT_EQ(Encoded(*other), before);
}

TEST(SaControllerTest, AcceptanceProbability) {
  EXPECT_DOUBLE_EQ(SaController::AcceptProbability(0.1, 0.5), 1.0);
  EXPECT_NEAR(SaController::AcceptProbability(-0.2, 0.1), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(SaController::AcceptProbability(0.0, 0.1), 1.0, 1e-15);
}

TEST(SaControllerTest, CoolsGeometricallyPerRollout) {
  auto space = Cell();
  SaController sa(space, std::make_shared<Rng>(1), SaOptions{0.3, 0.9});
  Drive(sa, 7, ZeroCount, 2);
  EXPECT_NEAR(sa.temperature(), 0.3 * std::pow(0.9, 14), 1e-15);
}

TEST(SaControllerTest, AlwaysAcceptsImprovementAndTracksCurrent) {
  auto space = Categorical({5, 5, 5});
  SaController sa(space, std::make_shared<Rng>(2), SaOptions{1e-9, 0.5});
  Drive(sa, 200, ZeroCount);
  ASSERT_TRUE(sa.has_current());
  // With a near-zero temperature SA is greedy; it ends at the optimum.
  EXPECT_EQ(sa.current().genotype, (Genotype{0, 0, 0}));
  EXPECT_DOUBLE_EQ(sa.current().reward, 1.0);
}

TEST(SaControllerTest, ProposalsAreSingleMutationsOfCurrent) {
  auto space = Categorical({4, 4, 4, 4});
  SaController sa(space, std::make_shared<Rng>(3), SaOptions{});
  Drive(sa, 1, ZeroCount);
  for (int i = 0; i < 50; ++i) {
    Genotype current = sa.current().genotype;
    auto r = Scored(sa.Sample(1), ZeroCount);
    int diff = 0;
    for (size_t p = 0; p < current.size(); ++p) diff += current[p] != r[0].genotype[p];
    EXPECT_EQ(diff, 1);
    sa.Step(r);
  }
}

TEST(EvoControllerTest, PopulationAgesOut) {
  auto space = Cell();
  EvoController evo(space, std::make_shared<Rng>(4), EvoOptions{5, 2});
  Drive(evo, 12, ZeroCount);
  ASSERT_EQ(evo.population().size(), 5u);
  for (size_t i = 0; i < evo.population().size(); ++i) {
    EXPECT_EQ(evo.population()[i].birth, static_cast<int64_t>(7 + i));
  }
}

TEST(EvoControllerTest, ChildIsMutationOfAMember) {
  auto space = Categorical({3, 3, 3, 3, 3});
  EvoController evo(space, std::make_shared<Rng>(5), EvoOptions{6, 3});
  Drive(evo, 6, ZeroCount);
  for (int i = 0; i < 40; ++i) {
    auto members = evo.population();
    auto r = Scored(evo.Sample(1), ZeroCount);
    bool found = false;
    for (const auto& m : members) {
      int diff = 0;
      for (size_t p = 0; p < m.genotype.size(); ++p) diff += m.genotype[p] != r[0].genotype[p];
      found = found || diff == 1;
    }
    EXPECT_TRUE(found);
    evo.Step(r);
  }
}

TEST(EvoControllerTest, FullTournamentSelectsTheBestParent) {
  auto space = Categorical({10, 10, 10});
  EvoController evo(space, std::make_shared<Rng>(6), EvoOptions{4, 4});
  Drive(evo, 4, [](const Genotype& g) { return 100.0 * g[0] + 10.0 * g[1] + g[2]; });
  auto members = evo.population();
  const EvoMember* best = &members.front();
  for (const auto& m : members) {
    if (m.reward > best->reward) best = &m;
  }
  for (int i = 0; i < 20; ++i) {
    auto r = evo.Sample(1);
    int diff = 0;
    for (size_t p = 0; p < 3; ++p) diff += best->genotype[p] != r[0].genotype[p];
    EXPECT_EQ(diff, 1);
  }
}

// L = -(1/N) sum_r [(R_r - b) sum_t log p_t + w sum_t H_t], recomputed
// from DecisionProbs.
double ReinforceLoss(const RlController& rl, const std::vector<DiscreteRollout>& rollouts) {
  double total = 0.0;
  for (const auto& r : rollouts) {
    auto probs = rl.DecisionProbs(r.genotype);
    double logp = 0.0;
    double entropy = 0.0;
    for (size_t t = 0; t < probs.size(); ++t) {
      logp += std::log(probs[t][r.genotype[t]]);
      for (double p : probs[t]) entropy -= p * std::log(p);
    }
    total += (r.reward() - rl.baseline()) * logp + rl.options().entropy_weight * entropy;
  }
  return -total / static_cast<double>(rollouts.size());
}

TEST(RlControllerTest, PolicyGradientMatchesFiniteDifferences) {
  for (int trial = 0; trial < 5; ++trial) {
    auto space = Categorical({3, 2, 4});
    RlOptions o;
    o.hidden_size = 5;
    o.embedding_size = 3;
    o.entropy_weight = 0.1;
    RlController rl(space, std::make_shared<Rng>(10 + trial), o);
    Drive(rl, 3, ZeroCount, 2);
    auto rollouts = Scored(rl.Sample(3), [](const Genotype& g) { return 0.3 * g[0] - g[2]; });
    std::vector<nn::Tensor2> analytic = rl.PolicyGradient(rollouts);
    auto loss = [&] { return ReinforceLoss(rl, rollouts); };
    EXPECT_LT(testing::MaxGradError(rl.Parameters(), analytic, loss), testing::kGradTolerance)
        << "trial " << trial;
  }
}

TEST(RlControllerTest, ProbabilitiesAreNormalized) {
  auto space = Cell();
  RlController rl(space, std::make_shared<Rng>(1), RlOptions{});
  Rng rng(2);
  Genotype g = space->RandomRollout(rng).genotype;
  auto probs = rl.DecisionProbs(g);
  ASSERT_EQ(probs.size(), space->decision_count());
  double logp = 0.0;
  for (size_t t = 0; t < probs.size(); ++t) {
    ASSERT_EQ(static_cast<int>(probs[t].size()), space->cardinalities()[t]);
    double s = 0.0;
    for (double p : probs[t]) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
    logp += std::log(probs[t][g[t]]);
  }
  EXPECT_NEAR(rl.LogProb(g), logp, 1e-12);
}

TEST(RlControllerTest, BaselineFollowsRewardAverage) {
  auto space = Categorical({2});
  RlOptions o;
  o.baseline_decay = 0.5;
  RlController rl(space, std::make_shared<Rng>(1), o);
  Drive(rl, 3, [](const Genotype&) { return 1.0; });
  EXPECT_NEAR(rl.baseline(), 1.0 - 0.125, 1e-12);
}

TEST(RlControllerTest, ShortBanditRunFavoursTheBetterArm) {
  auto space = Categorical({2});
  RlOptions o;
  o.hidden_size = 8;
  o.embedding_size = 4;
  o.learning_rate = 0.05;
  RlController rl(space, std::make_shared<Rng>(3), o);
  const double before = rl.DecisionProbs({0})[0][0];
  Drive(rl, 200, [](const Genotype& g) { return g[0] == 0 ? 1.0 : 0.0; });
  EXPECT_GT(rl.DecisionProbs({0})[0][0], std::max(before, 0.7));
  EXPECT_EQ(rl.Sample(1, SampleMode::kDerive)[0].genotype, Genotype{0});
}

TEST(RlControllerTest, HeadBiasIndexPointsAtTheHeadBias) {
  auto space = Categorical({3, 5});
  RlController rl(space, std::make_shared<Rng>(1), RlOptions{});
  auto params = rl.Parameters();
  EXPECT_EQ(params[rl.HeadBiasIndex(0)]->cols(), 3u);
  EXPECT_EQ(params[rl.HeadBiasIndex(1)]->cols(), 5u);
  EXPECT_EQ(params[rl.HeadBiasIndex(1)]->rows(), 1u);
}

TEST(PredictorControllerTest, SurrogateTrainingReducesError) {
  auto space = Cell();
  PredictorOptions o;
  o.hidden = {16};
  PredictorController pc(space, std::make_shared<Rng>(1), o);
  Rng rng(2);
  for (int i = 0; i < 60; ++i) {
    Genotype g = space->RandomRollout(rng).genotype;
    pc.AddObservation(g, ZeroCount(g));
  }
  FitReport fit = pc.TrainSurrogate(300);
  EXPECT_LT(fit.final_mse, fit.initial_mse);
  EXPECT_LT(fit.final_mse, 0.01);
  EXPECT_NEAR(pc.SurrogateMse(), fit.final_mse, 1e-12);
}

TEST(PredictorControllerTest, ProposalsAreFreshAndDistinct) {
  auto space = Cell();
  auto c = Make("predictor", space, 3);
  std::set<Genotype> seen;
  for (int i = 0; i < 30; ++i) {
    auto r = Scored(c->Sample(1), ZeroCount);
    Genotype g = space->Canonicalize(r[0].genotype);
    EXPECT_TRUE(seen.insert(g).second) << "repeat at step " << i;
    c->Step(r);
  }
}

TEST(PredictorControllerTest, DeriveReturnsHighestScores) {
  auto space = Cell();
  PredictorOptions o;
  o.candidates = 50;
  PredictorController pc(space, std::make_shared<Rng>(1), o);
  Drive(pc, 20, ZeroCount);
  auto derived = pc.Sample(5, SampleMode::kDerive);
  for (size_t i = 1; i < derived.size(); ++i) {
    EXPECT_GE(pc.Score(derived[i - 1].genotype), pc.Score(derived[i].genotype));
  }
}

}  // namespace
}  // namespace nasforge
