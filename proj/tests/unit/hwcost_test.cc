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
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nasforge/common/error.h"
#include "nasforge/common/rng.h"
#include "nasforge/hwcost/cost_model.h"
#include "nasforge/hwcost/device.h"
#include "nasforge/hwcost/pipeline.h"
#include "nasforge/hwcost/profiling.h"
#include "nasforge/search_space/blockwise_space.h"
#include "testing/gradcheck.h"
#include "testing/oracles.h"

namespace nasforge {
namespace {

DeviceSimulator Device(DeviceKind kind, uint64_t seed = 1) {
  DeviceOptions options;
  options.kind = kind;
  options.seed = seed;
  return DeviceSimulator(options);
}

struct Fixture {
  BlockwiseSpace space;
  DeviceSimulator device = Device(DeviceKind::kGpuLike);
  ProfilingTable table = ProfilePrimitives(space, device);

  CostDataset Dataset(int n_train, int n_test, uint64_t seed) const {
    Rng rng(seed);
    return BuildCostDataset(space, device, table, n_train, n_test, rng);
  }
};

TEST(PrimitiveKeyTest, MacsMatchReference) {
  BlockwiseSpace space;
  for (const PrimitiveKey& key : space.ReachablePrimitives()) {
    const double expected =
        testing::ReferenceMacs(key.in.c, key.in.h, key.in.w, key.out_channels, key.kernel,
                               key.stride, key.expansion);
    EXPECT_DOUBLE_EQ(InvertedBottleneckMacs(key), expected) << key.ToString();
  }
  PrimitiveKey k{{16, 32, 32}, 24, 3, 2, 6};
  EXPECT_DOUBLE_EQ(InvertedBottleneckMacs(k),
                   16.0 * 96 * 32 * 32 + 96.0 * 9 * 16 * 16 + 96.0 * 24 * 16 * 16);
}

TEST(PrimitiveKeyTest, StringRoundTrip) {
  BlockwiseSpace space;
  std::set<std::string> names;
  for (const PrimitiveKey& key : space.ReachablePrimitives()) {
    EXPECT_EQ(PrimitiveKey::Parse(key.ToString()), key);
    names.insert(key.ToString());
  }
  EXPECT_EQ(names.size(), space.ReachablePrimitives().size());
  EXPECT_THROW(PrimitiveKey::Parse("ib_c16_h32"), GenotypeError);
}

TEST(DeviceTest, PrimitiveCostsDeterministicPositiveAndMacsOrdered) {
  BlockwiseSpace space;
  DeviceSimulator a = Device(DeviceKind::kGpuLike, 3);
  DeviceSimulator b = Device(DeviceKind::kGpuLike, 3);
  for (const PrimitiveKey& key : space.ReachablePrimitives()) {
    EXPECT_GT(a.PrimitiveCost(key), 0.0);
    EXPECT_EQ(a.PrimitiveCost(key), b.PrimitiveCost(key));
  }
  PrimitiveKey small{{16, 32, 32}, 24, 3, 2, 3};
  PrimitiveKey big{{16, 32, 32}, 24, 7, 2, 6};
  EXPECT_LT(a.PrimitiveCost(small), a.PrimitiveCost(big));
}

TEST(DeviceTest, NetworkNoiseIsSmallAndReproducible) {
  Fixture f;
  Rng rng(2);
  double max_ratio = 0.0;
  for (int i = 0; i < 200; ++i) {
    Genotype g = f.space.Canonicalize(f.space.RandomRollout(rng).genotype);
    auto blocks = f.space.BlockFeatures(g, f.table);
    const double noisy = f.device.NetworkCost(blocks);
    EXPECT_EQ(noisy, f.device.NetworkCost(blocks));
    max_ratio = std::max(max_ratio, std::abs(noisy / f.device.NoiselessNetworkCost(blocks) - 1));
  }
  EXPECT_GT(max_ratio, 0.0);
  EXPECT_LT(max_ratio, 0.06);
  EXPECT_THROW(f.device.NetworkCost({}), Error);
}

TEST(DeviceTest, NoiselessFormulasMatchClosedForm) {
  Fixture f;
  Rng rng(5);
  Genotype g = f.space.Canonicalize(f.space.RandomRollout(rng).genotype);
  auto blocks = f.space.BlockFeatures(g, f.table);
  double s = 0.0;
  double sq = 0.0;
  for (const auto& b : blocks) {
    s += b.cost;
    sq += b.cost * b.cost;
  }
  const auto& c = DeviceSimulator::kGpuDefaults;
  EXPECT_NEAR(f.device.NoiselessNetworkCost(blocks),
              c[0] + c[1] * s + c[2] * std::sqrt(sq) + c[3] * blocks.size(), 1e-12);
  DeviceSimulator fpga = Device(DeviceKind::kFpgaLike);
  const auto& e = DeviceSimulator::kFpgaDefaults;
  EXPECT_NEAR(fpga.NoiselessNetworkCost(blocks),
              e[0] + e[1] * s + e[2] * std::pow(s, DeviceSimulator::kFpgaExponent), 1e-12);
}

TEST(ProfilingTableTest, CoversReachablePrimitivesAndRoundTrips) {
  Fixture f;
  EXPECT_EQ(f.table.size(), f.space.ReachablePrimitives().size());
  EXPECT_EQ(f.table.metric(), kLatencyMetric);
  EXPECT_EQ(ProfilingTable::FromCsv(f.table.ToCsv()), f.table);
  PrimitiveKey missing{{3, 3, 3}, 3, 3, 1, 1};
  EXPECT_THROW(f.table.Cost(missing), MissingEntryError);
}

TEST(ProfilingTableTest, RejectsBadEntries) {
  ProfilingTable table("gpu_like", kLatencyMetric);
  PrimitiveKey key{{16, 32, 32}, 24, 3, 2, 6};
  EXPECT_THROW(table.Insert(key, 0.0), Error);
  EXPECT_THROW(table.Insert(key, std::nan("")), Error);
  table.Insert(key, 1.0);
  EXPECT_THROW(table.Insert(key, 2.0), Error);
  EXPECT_THROW(ProfilingTable::FromCsv("# device=x metric=y\nbogus,1.0\n"), Error);
}

TEST(NormalEquationsTest, MatchesCramerOracle) {
  Rng rng(7);
  for (int cols : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::vector<double>> x;
      std::vector<double> y;
      for (int i = 0; i < 30; ++i) {
        std::vector<double> row;
        for (int c = 0; c < cols - 1; ++c) row.push_back(rng.Uniform(0, 10));
        row.push_back(1.0);
        x.push_back(row);
        y.push_back(rng.Uniform(-5, 5));
      }
      auto got = SolveNormalEquations(x, y);
      auto want = testing::CramerLeastSquares(x, y);
      ASSERT_EQ(got.size(), want.size());
      for (size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-9);
    }
  }
}

TEST(NormalEquationsTest, SingularSystemRaises) {
  std::vector<std::vector<double>> x = {{1, 1}, {2, 2}, {3, 3}};
  EXPECT_THROW(SolveNormalEquations(x, {1, 2, 3}), NumericError);
}

TEST(LinearCostModelTest, RecoversExactLinearTargets) {
  Fixture f;
  CostDataset data = f.Dataset(60, 1, 1);
  std::vector<CostSample> train = data.TrainSplit();
  for (auto& s : train) s.cost = 0.3 + 1.7 * SumOfCosts(s.blocks) + 0.05 * s.blocks.size();
  LinearCostModel model(true);
  FitReport report = model.Fit(train);
  EXPECT_NEAR(model.coefficients()[0], 1.7, 1e-8);
  EXPECT_NEAR(model.coefficients()[1], 0.05, 1e-8);
  EXPECT_NEAR(model.coefficients()[2], 0.3, 1e-8);
  EXPECT_LT(report.final_mse, 1e-12);
  EXPECT_THROW(model.Fit({}), Error);
}

TEST(LinearCostModelTest, SaveLoadPredictsIdentically) {
  Fixture f;
  CostDataset data = f.Dataset(50, 10, 2);
  LinearCostModel model(false);
  model.Fit(data.TrainSplit());
  nn::TensorList saved;
  model.Save(saved);
  LinearCostModel restored(false);
  restored.Load(saved);
  for (const auto& s : data.TestSplit()) {
    EXPECT_EQ(model.Predict(s.blocks), restored.Predict(s.blocks));
  }
}

TEST(StandardizerTest, NormalizesAndInverts) {
  nn::Tensor2 data(4, 2, std::vector<double>{1, 5, 2, 5, 3, 5, 4, 5});
  Standardizer s = Standardizer::Fit(data);
  EXPECT_DOUBLE_EQ(s.mean()[0], 2.5);
  EXPECT_DOUBLE_EQ(s.stddev()[1], 1.0);
  nn::Tensor2 z = s.Normalize(data);
  double sum = 0.0;
  double sq = 0.0;
  for (size_t r = 0; r < 4; ++r) {
    sum += z(r, 0);
    sq += z(r, 0) * z(r, 0);
  }
  EXPECT_NEAR(sum, 0.0, 1e-12);
  EXPECT_NEAR(sq / 4, 1.0, 1e-12);
  nn::Tensor2 back = s.Denormalize(z);
  for (size_t i = 0; i < data.size(); ++i) EXPECT_NEAR(back[i], data[i], 1e-12);
}

TEST(CostDatasetTest, SplitsAreDisjointByGenotype) {
  Fixture f;
  CostDataset data = f.Dataset(100, 50, 3);
  EXPECT_EQ(data.train.size(), 100u);
  EXPECT_EQ(data.test.size(), 50u);
  std::set<Genotype> train;
  for (size_t i : data.train) train.insert(data.samples[i].genotype);
  EXPECT_EQ(train.size(), 100u);
  for (size_t i : data.test) EXPECT_FALSE(train.count(data.samples[i].genotype));
  for (const auto& s : data.samples) {
    EXPECT_EQ(s.cost, f.device.NetworkCost(s.blocks));
  }
}

// Loss and gradients of a neural cost model on a fixed batch, after a short
// fit so that statistics and parameters are initialized.
double MaxCostModelGradError(CostModelKind kind, uint64_t seed, int n) {
  Fixture f;
  CostDataset data = f.Dataset(n, 1, seed);
  std::vector<CostSample> train = data.TrainSplit();
  CostModelOptions options;
  options.epochs = 1;
  options.seed = seed;
  options.mlp_hidden = {6, 5};
  options.lstm_hidden = 4;
  auto model = MakeCostModel(kind, options);
  model->Fit(train);
  auto* neural = dynamic_cast<NeuralCostModel*>(model.get());
  std::vector<const CostSample*> batch;
  if (kind == CostModelKind::kLstm) {
    const size_t len = train.front().blocks.size();
    for (const auto& s : train) {
      if (s.blocks.size() == len) batch.push_back(&s);
    }
  } else {
    for (const auto& s : train) batch.push_back(&s);
  }
  std::vector<nn::Tensor2> grads = neural->ZeroGrads();
  neural->LossAndGrad(batch, &grads);
  return testing::MaxGradError(neural->Parameters(), grads,
                               [&] { return neural->LossAndGrad(batch, nullptr); });
}

TEST(CostModelGradTest, MlpEndToEnd) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    EXPECT_LT(MaxCostModelGradError(CostModelKind::kMlp, seed, 4 + seed % 5),
              testing::kGradTolerance)
        << "seed " << seed;
  }
}

TEST(CostModelGradTest, LstmEndToEnd) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    EXPECT_LT(MaxCostModelGradError(CostModelKind::kLstm, seed, 4 + seed % 5),
              testing::kGradTolerance)
        << "seed " << seed;
  }
}

TEST(CostModelTest, NeuralModelsSaveLoad) {
  Fixture f;
  CostDataset data = f.Dataset(40, 10, 4);
  CostModelOptions options;
  options.epochs = 3;
  for (CostModelKind kind : {CostModelKind::kMlp, CostModelKind::kLstm}) {
    auto model = MakeCostModel(kind, options);
    model->Fit(data.TrainSplit());
    nn::TensorList saved;
    model->Save(saved);
    auto restored = MakeCostModel(kind, options);
    restored->Load(saved);
    for (const auto& s : data.TestSplit()) {
      EXPECT_EQ(model->Predict(s.blocks), restored->Predict(s.blocks)) << model->name();
    }
  }
}

TEST(CostModelTest, KindNamesRoundTrip) {
  for (CostModelKind kind : {CostModelKind::kSum, CostModelKind::kLinear1,
                             CostModelKind::kLinear2, CostModelKind::kMlp,
                             CostModelKind::kLstm}) {
    EXPECT_EQ(ParseCostModelKind(CostModelKindName(kind)), kind);
    EXPECT_EQ(MakeCostModel(kind)->kind(), kind);
  }
  EXPECT_FALSE(ParseCostModelKind("gbdt").has_value());
}

PipelineOptions SmallPipeline(uint64_t seed) {
  PipelineOptions options;
  options.n_train = 300;
  options.n_test = 150;
  options.model_options.epochs = 40;
  options.seed = seed;
  options.device.seed = seed;
  return options;
}

TEST(PipelineTest, LearnedModelsBeatNaiveSumOnSmallRun) {
  BlockwiseSpace space;
  PipelineResult result = RunCostPipeline(space, SmallPipeline(1));
  const double sum = result.report.Row("sum").rmse;
  for (const char* name : {"linear1", "linear2", "mlp", "lstm"}) {
    EXPECT_LT(result.report.Row(name).rmse, sum) << name;
    EXPECT_NEAR(result.report.Row(name).improvement_vs_sum,
                sum / result.report.Row(name).rmse, 1e-12);
  }
  for (const FitReport& fit : result.fits) EXPECT_LE(fit.final_mse, fit.initial_mse);
}

TEST(PipelineTest, BitReproducible) {
  BlockwiseSpace space;
  PipelineOptions options = SmallPipeline(2);
  options.model_options.epochs = 5;
  PipelineResult a = RunCostPipeline(space, options);
  PipelineResult b = RunCostPipeline(space, options);
  EXPECT_EQ(a.report.ToCsv(), b.report.ToCsv());
  EXPECT_EQ(ScatterCsv(a.ModelPointers(), a.dataset), ScatterCsv(b.ModelPointers(), b.dataset));
}

TEST(PipelineTest, ReportNeedsSumBaseline) {
  Fixture f;
  CostDataset data = f.Dataset(20, 5, 1);
  LinearCostModel model(false);
  model.Fit(data.TrainSplit());
  std::vector<const CostModel*> models = {&model};
  EXPECT_THROW(CompareReport(models, data, "gpu_like", kLatencyMetric), Error);
}

TEST(PipelineTest, RmseIsRootMeanSquare) {
  Fixture f;
  CostDataset data = f.Dataset(10, 20, 6);
  SumCostModel sum;
  double sq = 0.0;
  for (const auto& s : data.TestSplit()) {
    const double e = SumOfCosts(s.blocks) - s.cost;
    sq += e * e;
  }
  EXPECT_NEAR(EvaluateRmse(sum, data.TestSplit()), std::sqrt(sq / 20), 1e-12);
  EXPECT_THROW(EvaluateRmse(sum, {}), Error);
}

}  // namespace
}  // namespace nasforge
