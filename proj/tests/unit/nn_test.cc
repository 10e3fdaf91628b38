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
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "nasforge/common/error.h"
#include "nasforge/common/rng.h"
#include "nasforge/nn/activation.h"
#include "nasforge/nn/dense.h"
#include "nasforge/nn/loss.h"
#include "nasforge/nn/lstm.h"
#include "nasforge/nn/mlp.h"
#include "nasforge/nn/optimizer.h"
#include "nasforge/nn/tensor.h"
#include "nasforge/nn/tensor_io.h"
#include "testing/gradcheck.h"
#include "testing/oracles.h"

namespace nasforge::nn {
namespace {

using testing::kGradTolerance;
using testing::MaxGradError;
using testing::RandomTensor;

constexpr int kShapeTrials = 20;

double WeightedSum(const Tensor2& t, const Tensor2& w) {
  double s = 0.0;
  for (size_t i = 0; i < t.size(); ++i) s += t[i] * w[i];
  return s;
}

TEST(TensorTest, MatMulMatchesLoops) {
  Tensor2 a = RandomTensor(3, 4, 1);
  Tensor2 b = RandomTensor(4, 5, 2);
  Tensor2 c = MatMul(a, b);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 5; ++j) {
      double s = 0.0;
      for (size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      EXPECT_NEAR(c(i, j), s, 1e-12);
    }
  }
  Tensor2 bt = RandomTensor(5, 4, 3);
  Tensor2 d = MatMulTransB(a, bt);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 5; ++j) {
      double s = 0.0;
      for (size_t k = 0; k < 4; ++k) s += a(i, k) * bt(j, k);
      EXPECT_NEAR(d(i, j), s, 1e-12);
    }
  }
  Tensor2 e = MatMulTransA(RandomTensor(4, 3, 4), b);
  EXPECT_EQ(e.rows(), 3u);
  EXPECT_EQ(e.cols(), 5u);
}

TEST(TensorTest, ShapeMismatchThrows) {
  EXPECT_THROW(MatMul(Tensor2(2, 3), Tensor2(2, 3)), ShapeError);
  EXPECT_THROW(Tensor2(2, 2, std::vector<double>{1.0}), ShapeError);
  Tensor2 a(2, 2);
  EXPECT_THROW(a += Tensor2(3, 2), ShapeError);
}

TEST(TensorTest, SliceAndConcatInvert) {
  Tensor2 a = RandomTensor(3, 2, 5);
  Tensor2 b = RandomTensor(3, 4, 6);
  Tensor2 ab = ConcatCols(a, b);
  EXPECT_EQ(SliceCols(ab, 0, 2), a);
  EXPECT_EQ(SliceCols(ab, 2, 6), b);
}

TEST(ActivationTest, NamesRoundTrip) {
  for (Activation a : {Activation::kIdentity, Activation::kRelu, Activation::kTanh,
                       Activation::kSigmoid}) {
    EXPECT_EQ(ParseActivation(ActivationName(a)), a);
  }
  EXPECT_FALSE(ParseActivation("gelu").has_value());
}

TEST(DenseTest, ForwardMatchesReference) {
  Rng rng(4);
  for (Activation act : {Activation::kIdentity, Activation::kRelu, Activation::kTanh,
                         Activation::kSigmoid}) {
    DenseLayer layer = DenseLayer::Initialized(5, 3, act, rng);
    Tensor2 x = RandomTensor(7, 5, 9);
    Tensor2 got = layer.Forward(x);
    Tensor2 want = testing::ReferenceDense(x, layer.weight, layer.bias, act);
    for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(DenseTest, InitializationBounds) {
  Rng rng(1);
  DenseLayer layer = DenseLayer::Initialized(16, 8, Activation::kRelu, rng);
  const double bound = 1.0 / std::sqrt(16.0);
  for (double v : layer.weight.values()) EXPECT_LE(std::abs(v), bound);
  for (double v : layer.bias.values()) EXPECT_LE(std::abs(v), bound);
}

TEST(DenseTest, GradientCheckAcrossShapes) {
  const Activation acts[] = {Activation::kIdentity, Activation::kTanh,
                             Activation::kSigmoid, Activation::kRelu};
  for (int trial = 0; trial < kShapeTrials; ++trial) {
    Rng shape_rng(100 + trial);
    const size_t batch = 1 + shape_rng.UniformInt(5);
    const size_t in = 1 + shape_rng.UniformInt(6);
    const size_t out = 1 + shape_rng.UniformInt(6);
    const Activation act = acts[trial % 4];
    DenseLayer layer = DenseLayer::Initialized(in, out, act, shape_rng);
    Tensor2 x = RandomTensor(batch, in, 200 + trial);
    Tensor2 probe = RandomTensor(batch, out, 300 + trial);
    if (act == Activation::kRelu) {
      // Keep pre-activations away from the kink.
      DenseLayer::Cache cache;
      layer.Forward(x, &cache);
      for (size_t i = 0; i < cache.pre.size(); ++i) {
        if (std::abs(cache.pre[i]) < 1e-3) layer.bias[i % out] += 0.01;
      }
    }
    auto loss = [&] { return WeightedSum(layer.Forward(x), probe); };

    DenseLayer::Cache cache;
    layer.Forward(x, &cache);
    DenseLayer::Grads grads = layer.ZeroGrads();
    Tensor2 dx = layer.Backward(x, cache, probe, &grads);
    EXPECT_LT(MaxGradError({&layer.weight, &layer.bias}, {grads.weight, grads.bias}, loss),
              kGradTolerance)
        << "trial " << trial;
    EXPECT_LT(MaxGradError({&x}, {dx}, loss), kGradTolerance) << "trial " << trial;
  }
}

TEST(LossTest, MseValueAndGradient) {
  for (int trial = 0; trial < kShapeTrials; ++trial) {
    Rng shape_rng(400 + trial);
    const size_t rows = 1 + shape_rng.UniformInt(6);
    const size_t cols = 1 + shape_rng.UniformInt(4);
    Tensor2 pred = RandomTensor(rows, cols, 500 + trial);
    Tensor2 target = RandomTensor(rows, cols, 600 + trial);
    double want = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
      want += (pred[i] - target[i]) * (pred[i] - target[i]);
    }
    want /= static_cast<double>(pred.size());
    Tensor2 grad;
    EXPECT_NEAR(Mse(pred, target, &grad), want, 1e-12);
    EXPECT_LT(MaxGradError({&pred}, {grad}, [&] { return Mse(pred, target); }),
              kGradTolerance);
  }
}

TEST(LossTest, SoftmaxIsNormalizedAndStable) {
  std::vector<double> logits = {1000.0, 1001.0, 999.0};
  std::vector<double> p = Softmax(logits);
  double sum = 0.0;
  for (double v : p) {
    EXPECT_TRUE(std::isfinite(v));
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  std::vector<double> lp = LogSoftmax(logits);
  for (size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(std::exp(lp[i]), p[i], 1e-12);
}

TEST(LossTest, CrossEntropyAndEntropyGradients) {
  for (int trial = 0; trial < kShapeTrials; ++trial) {
    Rng shape_rng(700 + trial);
    const size_t n = 2 + shape_rng.UniformInt(6);
    Tensor2 logits = RandomTensor(1, n, 800 + trial, 3.0);
    const int label = shape_rng.UniformInt(static_cast<int>(n));

    std::vector<double> g;
    SoftmaxCrossEntropy(logits.values(), label, &g);
    auto ce = [&] { return SoftmaxCrossEntropy(logits.values(), label); };
    EXPECT_LT(MaxGradError({&logits}, {Tensor2(1, n, g)}, ce), kGradTolerance);

    std::vector<double> gh;
    const double h = SoftmaxEntropy(logits.values(), &gh);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(static_cast<double>(n)) + 1e-12);
    auto ent = [&] { return SoftmaxEntropy(logits.values()); };
    EXPECT_LT(MaxGradError({&logits}, {Tensor2(1, n, gh)}, ent), kGradTolerance);
  }
}

TEST(LossTest, CrossEntropyOfUniformIsLogN) {
  std::vector<double> logits(4, 0.3);
  EXPECT_NEAR(SoftmaxCrossEntropy(logits, 2), std::log(4.0), 1e-12);
  EXPECT_NEAR(SoftmaxEntropy(logits), std::log(4.0), 1e-12);
}

TEST(LstmTest, ForwardMatchesReference) {
  Rng rng(12);
  LstmParams p = LstmParams::Initialized(3, 4, rng);
  Tensor2 x = RandomTensor(2, 3, 13);
  LstmState prev{RandomTensor(2, 4, 14), RandomTensor(2, 4, 15)};
  LstmState next = LstmCellForward(p, x, prev);
  Tensor2 h;
  Tensor2 c;
  testing::ReferenceLstmStep(p, x, prev.h, prev.c, &h, &c);
  for (size_t i = 0; i < h.size(); ++i) {
    EXPECT_NEAR(next.h[i], h[i], 1e-12);
    EXPECT_NEAR(next.c[i], c[i], 1e-12);
  }
}

TEST(LstmTest, ForgetBiasInitializedToOne) {
  Rng rng(2);
  LstmParams p = LstmParams::Initialized(2, 3, rng);
  for (double v : p.bias[kGateF].values()) EXPECT_DOUBLE_EQ(v, 1.0);
}

// Unrolled sequence with loss sum(h_T * a) + sum(c_T * b) + sum_t sum(h_t * r_t).
TEST(LstmTest, BackpropThroughTimeGradientCheck) {
  for (int trial = 0; trial < kShapeTrials; ++trial) {
    Rng shape_rng(900 + trial);
    const size_t batch = 1 + shape_rng.UniformInt(3);
    const size_t in = 1 + shape_rng.UniformInt(4);
    const size_t hid = 1 + shape_rng.UniformInt(4);
    const size_t steps = 1 + shape_rng.UniformInt(4);
    LstmParams p = LstmParams::Initialized(in, hid, shape_rng);
    std::vector<Tensor2> xs;
    std::vector<Tensor2> probes;
    for (size_t t = 0; t < steps; ++t) {
      xs.push_back(RandomTensor(batch, in, 1000 + 10 * trial + t));
      probes.push_back(RandomTensor(batch, hid, 2000 + 10 * trial + t));
    }
    Tensor2 probe_c = RandomTensor(batch, hid, 3000 + trial);
    LstmState init{RandomTensor(batch, hid, 4000 + trial, 0.5),
                   RandomTensor(batch, hid, 5000 + trial, 0.5)};

    auto loss = [&] {
      LstmState s = init;
      double total = 0.0;
      for (size_t t = 0; t < steps; ++t) {
        s = LstmCellForward(p, xs[t], s);
        total += WeightedSum(s.h, probes[t]);
      }
      return total + WeightedSum(s.c, probe_c);
    };

    std::vector<LstmStepCache> caches(steps);
    LstmState s = init;
    for (size_t t = 0; t < steps; ++t) s = LstmCellForward(p, xs[t], s, &caches[t]);
    LstmParams grads = LstmParams::Zeros(in, hid);
    Tensor2 dh_next(batch, hid);
    Tensor2 dc_next = probe_c;
    std::vector<Tensor2> dxs(steps);
    Tensor2 dh0;
    Tensor2 dc0;
    for (size_t t = steps; t-- > 0;) {
      Tensor2 dh = probes[t];
      dh += dh_next;
      LstmStepGrads g = LstmCellBackward(p, caches[t], dh, dc_next, &grads);
      dxs[t] = g.x;
      dh_next = g.h_prev;
      dc_next = g.c_prev;
    }

    std::vector<Tensor2> analytic;
    for (const Tensor2* t : grads.Parameters()) analytic.push_back(*t);
    EXPECT_LT(MaxGradError(p.Parameters(), analytic, loss), kGradTolerance)
        << "trial " << trial;

    std::vector<Tensor2*> inputs;
    for (auto& x : xs) inputs.push_back(&x);
    EXPECT_LT(MaxGradError(inputs, dxs, loss), kGradTolerance) << "trial " << trial;
    EXPECT_LT(MaxGradError({&init.h, &init.c}, {dh_next, dc_next}, loss), kGradTolerance)
        << "trial " << trial;
  }
}

TEST(MlpTest, GradientCheckAcrossShapes) {
  for (int trial = 0; trial < kShapeTrials; ++trial) {
    Rng shape_rng(6000 + trial);
    std::vector<size_t> sizes = {1 + static_cast<size_t>(shape_rng.UniformInt(5))};
    const int depth = 1 + shape_rng.UniformInt(3);
    for (int l = 0; l < depth; ++l) sizes.push_back(1 + shape_rng.UniformInt(6));
    const Activation hidden = trial % 2 == 0 ? Activation::kTanh : Activation::kSigmoid;
    Mlp mlp(sizes, hidden, shape_rng);
    Tensor2 x = RandomTensor(1 + shape_rng.UniformInt(4), sizes.front(), 7000 + trial);
    Tensor2 y = RandomTensor(x.rows(), sizes.back(), 8000 + trial);
    auto loss = [&] { return Mse(mlp.Forward(x), y); };

    Mlp::Tape tape;
    Tensor2 grad_out;
    Mse(mlp.Forward(x, &tape), y, &grad_out);
    std::vector<Tensor2> grads = mlp.ZeroGrads();
    Tensor2 dx = mlp.Backward(tape, grad_out, &grads);
    EXPECT_LT(MaxGradError(mlp.Parameters(), grads, loss), kGradTolerance)
        << "trial " << trial;
    EXPECT_LT(MaxGradError({&x}, {dx}, loss), kGradTolerance) << "trial " << trial;
  }
}

TEST(MlpTest, OutputLayerIsLinear) {
  Rng rng(3);
  Mlp mlp({2, 4, 3}, Activation::kRelu, rng);
  EXPECT_EQ(mlp.layers().back().activation, Activation::kIdentity);
  EXPECT_EQ(mlp.layers().front().activation, Activation::kRelu);
  EXPECT_EQ(mlp.ParameterCount(), 2u * 4 + 4 + 4 * 3 + 3);
}

TEST(MlpTest, SaveLoadRoundTrip) {
  Rng rng(8);
  Mlp mlp({3, 5, 2}, Activation::kTanh, rng);
  TensorList list;
  mlp.Save("m.", list);
  Mlp other;
  other.Load("m.", list);
  Tensor2 x = RandomTensor(4, 3, 1);
  EXPECT_EQ(mlp.Forward(x), other.Forward(x));
}

TEST(OptimizerTest, AdamFirstStepMovesByLearningRate) {
  // With m = (1-b1) g and v = (1-b2) g^2, bias correction makes the first
  // step lr * g / (|g| + eps) ~ lr * sign(g).
  Optimizer adam(OptimizerKind::kAdam, 0.1);
  Tensor2 p = Tensor2::Row({1.0, -2.0, 0.5});
  std::vector<Tensor2> g = {Tensor2::Row({0.3, -4.0, 0.0})};
  std::vector<Tensor2*> params = {&p};
  adam.Step(params, g);
  EXPECT_NEAR(p[0], 1.0 - 0.1 * 0.3 / (0.3 + 1e-8), 1e-12);
  EXPECT_NEAR(p[1], -2.0 + 0.1 * 4.0 / (4.0 + 1e-8), 1e-12);
  EXPECT_DOUBLE_EQ(p[2], 0.5);
  EXPECT_EQ(adam.step_count(), 1);
}

TEST(OptimizerTest, AdamSecondStepMatchesHandComputation) {
  Optimizer adam(OptimizerKind::kAdam, 0.01);
  Tensor2 p = Tensor2::Row({0.0});
  std::vector<Tensor2*> params = {&p};
  adam.Step(params, std::vector<Tensor2>{Tensor2::Row({1.0})});
  adam.Step(params, std::vector<Tensor2>{Tensor2::Row({-2.0})});
  const double m1 = 0.1 * 1.0;
  const double v1 = 0.001 * 1.0;
  const double first = 0.01 * (m1 / 0.1) / (std::sqrt(v1 / 0.001) + 1e-8);
  const double m2 = 0.9 * m1 + 0.1 * -2.0;
  const double v2 = 0.999 * v1 + 0.001 * 4.0;
  const double mhat = m2 / (1.0 - 0.81);
  const double vhat = v2 / (1.0 - 0.999 * 0.999);
  const double second = 0.01 * mhat / (std::sqrt(vhat) + 1e-8);
  EXPECT_NEAR(p[0], -first - second, 1e-12);
}

TEST(OptimizerTest, SgdStep) {
  Optimizer sgd(OptimizerKind::kSgd, 0.5);
  Tensor2 p = Tensor2::Row({1.0, 2.0});
  std::vector<Tensor2*> params = {&p};
  sgd.Step(params, std::vector<Tensor2>{Tensor2::Row({2.0, -2.0})});
  EXPECT_DOUBLE_EQ(p[0], 0.0);
  EXPECT_DOUBLE_EQ(p[1], 3.0);
}

TEST(OptimizerTest, NonFiniteGradientLeavesParametersUntouched) {
  Optimizer adam(OptimizerKind::kAdam, 0.1);
  Tensor2 p = Tensor2::Row({1.0, 2.0});
  Tensor2 q = Tensor2::Row({3.0});
  std::vector<Tensor2*> params = {&p, &q};
  std::vector<Tensor2> g = {Tensor2::Row({0.1, 0.1}), Tensor2::Row({std::nan("")})};
  EXPECT_THROW(adam.Step(params, g), NumericError);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(q[0], 3.0);
  EXPECT_EQ(adam.step_count(), 0);
}

TEST(OptimizerTest, SaveLoadContinuesIdentically) {
  Optimizer a(OptimizerKind::kAdam, 0.05);
  Tensor2 pa = Tensor2::Row({1.0, -1.0});
  std::vector<Tensor2*> params_a = {&pa};
  a.Step(params_a, std::vector<Tensor2>{Tensor2::Row({0.5, 0.2})});
  TensorList list;
  a.Save("opt.", list);
  Optimizer b(OptimizerKind::kAdam, 0.05);
  b.Load("opt.", list);
  Tensor2 pb = pa;
  std::vector<Tensor2*> params_b = {&pb};
  std::vector<Tensor2> g = {Tensor2::Row({-0.3, 0.7})};
  a.Step(params_a, g);
  b.Step(params_b, g);
  EXPECT_EQ(pa, pb);
}

TEST(TensorIoTest, FileRoundTrip) {
  TensorFile file;
  file.kind = "test/kind";
  file.version = 3;
  file.tensors.Add("a", RandomTensor(2, 3, 1));
  file.tensors.AddScalar("s", 0.125);
  file.tensors.AddInts("ints", {1, -2, 3});
  TensorFile back = DecodeTensorFile(EncodeTensorFile(file));
  EXPECT_EQ(back.kind, "test/kind");
  EXPECT_EQ(back.version, 3u);
  EXPECT_EQ(back.tensors.Get("a"), file.tensors.Get("a"));
  EXPECT_DOUBLE_EQ(back.tensors.GetScalar("s"), 0.125);
  EXPECT_EQ(back.tensors.GetInts("ints"), (std::vector<int>{1, -2, 3}));
}

TEST(TensorIoTest, CorruptionDetected) {
  TensorFile file;
  file.kind = "k";
  file.tensors.Add("a", RandomTensor(4, 4, 2));
  std::string bytes = EncodeTensorFile(file);
  for (size_t pos : {size_t{0}, bytes.size() / 2, bytes.size() - 1}) {
    std::string bad = bytes;
    bad[pos] ^= 0x5A;
    EXPECT_THROW(DecodeTensorFile(bad), CheckpointError) << pos;
  }
  EXPECT_THROW(DecodeTensorFile(bytes.substr(0, bytes.size() - 3)), CheckpointError);
  EXPECT_THROW(DecodeTensorFile(""), CheckpointError);
}

TEST(TensorIoTest, MissingNameAndShapeChecked) {
  TensorList list;
  list.Add("w", Tensor2(2, 2));
  EXPECT_THROW(list.Get("v"), CheckpointError);
  EXPECT_THROW(list.Get("w", 3, 2), CheckpointError);
  EXPECT_NO_THROW(list.Get("w", 2, 2));
}

TEST(TensorIoTest, WriteReadFile) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "nasforge_tensor_io_test.bin").string();
  TensorFile file;
  file.kind = "x";
  file.tensors.Add("t", RandomTensor(3, 1, 4));
  WriteTensorFile(path, file);
  TensorFile back = ReadTensorFile(path);
  EXPECT_EQ(back.tensors.Get("t"), file.tensors.Get("t"));
  std::filesystem::remove(path);
  EXPECT_THROW(ReadTensorFile(path), CheckpointError);
}

}  // namespace
}  // namespace nasforge::nn
