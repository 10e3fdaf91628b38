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

#include "nasforge/hwcost/cost_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "nasforge/common/error.h"
#include "nasforge/common/rng.h"
#include "nasforge/nn/loss.h"
#include "nasforge/nn/optimizer.h"

namespace nasforge {
namespace {

using nn::Tensor2;

void RequireNonEmpty(std::span<const CostSample> train) {
  if (train.empty()) throw Error("cost model fit: empty training split");
}

double NativeMse(const CostModel& model, std::span<const CostSample> samples) {
  double total = 0.0;
  for (const auto& s : samples) {
    const double d = model.Predict(s.blocks) - s.cost;
    total += d * d;
  }
  return total / static_cast<double>(samples.size());
}

Tensor2 TargetColumn(std::span<const CostSample* const> batch,
                     const Standardizer& stats) {
  Tensor2 y(batch.size(), 1);
  for (size_t i = 0; i < batch.size(); ++i) {
    y[i] = stats.Normalize(batch[i]->cost, 0);
  }
  return y;
}

}  // namespace

std::string_view CostModelKindName(CostModelKind kind) {
  switch (kind) {
    case CostModelKind::kSum:
      return "sum";
    case CostModelKind::kLinear1:
      return "linear1";
    case CostModelKind::kLinear2:
      return "linear2";
    case CostModelKind::kMlp:
      return "mlp";
    case CostModelKind::kLstm:
      return "lstm";
  }
  return "?";
}

std::optional<CostModelKind> ParseCostModelKind(std::string_view name) {
  for (CostModelKind k : {CostModelKind::kSum, CostModelKind::kLinear1,
                          CostModelKind::kLinear2, CostModelKind::kMlp,
                          CostModelKind::kLstm}) {
    if (CostModelKindName(k) == name) return k;
  }
  return std::nullopt;
}

Standardizer Standardizer::Fit(const Tensor2& data) {
  if (data.rows() == 0) throw Error("Standardizer::Fit: no rows");
  Standardizer s;
  s.mean_.assign(data.cols(), 0.0);
  s.std_.assign(data.cols(), 0.0);
  const double n = static_cast<double>(data.rows());
  for (size_t r = 0; r < data.rows(); ++r) {
    for (size_t c = 0; c < data.cols(); ++c) s.mean_[c] += data(r, c);
  }
  for (double& m : s.mean_) m /= n;
  for (size_t r = 0; r < data.rows(); ++r) {
    for (size_t c = 0; c < data.cols(); ++c) {
      const double d = data(r, c) - s.mean_[c];
      s.std_[c] += d * d;
    }
  }
  for (double& v : s.std_) {
    v = std::sqrt(v / n);
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

Standardizer Standardizer::Identity(size_t cols) {
  Standardizer s;
  s.mean_.assign(cols, 0.0);
  s.std_.assign(cols, 1.0);
  return s;
}

Tensor2 Standardizer::Normalize(const Tensor2& data) const {
  if (data.cols() != cols()) throw ShapeError("Standardizer: column mismatch");
  Tensor2 out = data;
  for (size_t r = 0; r < out.rows(); ++r) {
    for (size_t c = 0; c < out.cols(); ++c) out(r, c) = Normalize(out(r, c), c);
  }
  return out;
}

Tensor2 Standardizer::Denormalize(const Tensor2& data) const {
  if (data.cols() != cols()) throw ShapeError("Standardizer: column mismatch");
  Tensor2 out = data;
  for (size_t r = 0; r < out.rows(); ++r) {
    for (size_t c = 0; c < out.cols(); ++c) out(r, c) = Denormalize(out(r, c), c);
  }
  return out;
}

void Standardizer::Save(const std::string& prefix, nn::TensorList& out) const {
  out.Add(prefix + "mean", Tensor2::Row(mean_));
  out.Add(prefix + "std", Tensor2::Row(std_));
}

void Standardizer::Load(const std::string& prefix, const nn::TensorList& in) {
  const Tensor2& mean = in.Get(prefix + "mean");
  const Tensor2& stddev = in.Get(prefix + "std", 1, mean.cols());
  mean_ = mean.values();
  std_ = stddev.values();
}

double SumOfCosts(std::span<const BlockFeature> blocks) {
  double s = 0.0;
  for (const auto& b : blocks) s += b.cost;
  return s;
}

FitReport SumCostModel::Fit(std::span<const CostSample> train) {
  RequireNonEmpty(train);
  const double mse = NativeMse(*this, train);
  return {mse, mse};
}

std::vector<double> SolveNormalEquations(
    const std::vector<std::vector<double>>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) {
    throw Error("normal equations: need matching, non-empty rows");
  }
  const size_t k = x[0].size();
  // Augmented [X^T X | X^T y].
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (size_t r = 0; r < x.size(); ++r) {
    if (x[r].size() != k) throw ShapeError("normal equations: ragged rows");
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) a[i][j] += x[r][i] * x[r][j];
      a[i][k] += x[r][i] * y[r];
    }
  }
  double scale = 0.0;
  for (size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(a[i][i]));
  for (size_t col = 0; col < k; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) <= 1e-12 * std::max(scale, 1.0)) {
      throw NumericError("normal equations are singular (degenerate features)");
    }
    std::swap(a[col], a[pivot]);
    for (size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> w(k);
  for (size_t i = 0; i < k; ++i) w[i] = a[i][k] / a[i][i];
  return w;
}

FitReport LinearCostModel::Fit(std::span<const CostSample> train) {
  RequireNonEmpty(train);
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  double initial = 0.0;
  for (const auto& s : train) {
    const double sum = SumOfCosts(s.blocks);
    if (use_block_count_) {
      rows.push_back({sum, static_cast<double>(s.blocks.size()), 1.0});
    } else {
      rows.push_back({sum, 1.0});
    }
    y.push_back(s.cost);
    initial += s.cost * s.cost;
  }
  coefficients_ = SolveNormalEquations(rows, y);
  return {initial / static_cast<double>(train.size()), NativeMse(*this, train)};
}

double LinearCostModel::Predict(std::span<const BlockFeature> blocks) const {
  if (coefficients_.empty()) throw Error(name() + ": model is not fitted");
  const double sum = SumOfCosts(blocks);
  if (use_block_count_) {
    return coefficients_[0] * sum +
           coefficients_[1] * static_cast<double>(blocks.size()) +
           coefficients_[2];
  }
  return coefficients_[0] * sum + coefficients_[1];
}

void LinearCostModel::Save(nn::TensorList& out) const {
  out.Add("linear.coefficients", Tensor2::Row(coefficients_));
}

void LinearCostModel::Load(const nn::TensorList& in) {
  const Tensor2& c = in.Get("linear.coefficients", 1, use_block_count_ ? 3 : 2);
  coefficients_ = c.values();
}

std::vector<Tensor2> NeuralCostModel::ZeroGrads() {
  std::vector<Tensor2> out;
  for (Tensor2* p : Parameters()) out.emplace_back(p->rows(), p->cols());
  return out;
}

std::vector<std::vector<size_t>> NeuralCostModel::Batches(
    std::span<const CostSample> train, Rng& rng) const {
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  std::vector<std::vector<size_t>> out;
  const auto batch = static_cast<size_t>(std::max(1, options_.batch_size));
  for (size_t i = 0; i < order.size(); i += batch) {
    out.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                     order.begin() + static_cast<std::ptrdiff_t>(
                                         std::min(order.size(), i + batch)));
  }
  return out;
}

FitReport NeuralCostModel::Fit(std::span<const CostSample> train) {
  RequireNonEmpty(train);
  Prepare(train);
  FitReport report;
  report.initial_mse = NativeMse(*this, train);
  Rng rng(Mix64(options_.seed ^ 0xB47C4ULL));
  nn::Optimizer optimizer(nn::OptimizerKind::kAdam, options_.learning_rate);
  std::vector<const CostSample*> batch;
  for (int epoch = 0; epoch < options_.epochs; ++epoch) {
    for (const auto& indices : Batches(train, rng)) {
      batch.clear();
      for (size_t i : indices) batch.push_back(&train[i]);
      std::vector<Tensor2> grads = ZeroGrads();
      LossAndGrad(batch, &grads);
      optimizer.Step(Parameters(), grads);
    }
  }
  report.final_mse = NativeMse(*this, train);
  return report;
}

std::vector<double> MlpCostModel::RawRow(
    std::span<const BlockFeature> blocks) const {
  if (blocks.size() > static_cast<size_t>(options_.mlp_pad)) {
    throw Error("mlp cost model: " + std::to_string(blocks.size()) +
                " blocks exceed padding length " +
                std::to_string(options_.mlp_pad));
  }
  std::vector<double> row(options_.mlp_pad, 0.0);
  for (size_t i = 0; i < blocks.size(); ++i) row[i] = blocks[i].cost;
  return row;
}

std::vector<double> MlpCostModel::InputRow(
    std::span<const BlockFeature> blocks) const {
  std::vector<double> row = RawRow(blocks);
  for (size_t i = 0; i < row.size(); ++i) row[i] = input_stats_.Normalize(row[i], i);
  return row;
}

void MlpCostModel::Prepare(std::span<const CostSample> train) {
  Tensor2 inputs(train.size(), options_.mlp_pad);
  Tensor2 targets(train.size(), 1);
  for (size_t r = 0; r < train.size(); ++r) {
    const std::vector<double> row = RawRow(train[r].blocks);
    std::copy(row.begin(), row.end(), inputs.row(r).begin());
    targets[r] = train[r].cost;
  }
  input_stats_ = Standardizer::Fit(inputs);
  target_stats_ = Standardizer::Fit(targets);
  std::vector<size_t> sizes = {static_cast<size_t>(options_.mlp_pad)};
  sizes.insert(sizes.end(), options_.mlp_hidden.begin(), options_.mlp_hidden.end());
  sizes.push_back(1);
  Rng rng(Mix64(options_.seed ^ 0x3A11ULL));
  net_ = nn::Mlp(sizes, nn::Activation::kRelu, rng);
}

double MlpCostModel::Predict(std::span<const BlockFeature> blocks) const {
  if (net_.layers().empty()) throw Error("mlp cost model is not fitted");
  const Tensor2 x = Tensor2::Row(InputRow(blocks));
  return target_stats_.Denormalize(net_.Forward(x)[0], 0);
}

double MlpCostModel::LossAndGrad(std::span<const CostSample* const> batch,
                                 std::vector<Tensor2>* grads) const {
  Tensor2 x(batch.size(), options_.mlp_pad);
  for (size_t r = 0; r < batch.size(); ++r) {
    const std::vector<double> row = InputRow(batch[r]->blocks);
    std::copy(row.begin(), row.end(), x.row(r).begin());
  }
  nn::Mlp::Tape tape;
  const Tensor2 pred = net_.Forward(x, &tape);
  Tensor2 grad;
  const double loss = nn::Mse(pred, TargetColumn(batch, target_stats_), &grad);
  if (grads != nullptr) net_.Backward(tape, grad, grads);
  return loss;
}

void MlpCostModel::Save(nn::TensorList& out) const {
  out.AddScalar("mlp.pad", options_.mlp_pad);
  input_stats_.Save("mlp.input.", out);
  target_stats_.Save("mlp.target.", out);
  net_.Save("mlp.net.", out);
}

void MlpCostModel::Load(const nn::TensorList& in) {
  options_.mlp_pad = static_cast<int>(in.GetScalar("mlp.pad"));
  input_stats_.Load("mlp.input.", in);
  target_stats_.Load("mlp.target.", in);
  net_.Load("mlp.net.", in);
}

std::vector<Tensor2*> LstmCostModel::Parameters() {
  std::vector<Tensor2*> out = lstm_.Parameters();
  out.push_back(&head_.weight);
  out.push_back(&head_.bias);
  return out;
}

void LstmCostModel::Prepare(std::span<const CostSample> train) {
  size_t total = 0;
  for (const auto& s : train) total += s.blocks.size();
  Tensor2 features(total, BlockFeature::kWidth);
  Tensor2 targets(train.size(), 1);
  size_t r = 0;
  for (size_t i = 0; i < train.size(); ++i) {
    if (train[i].blocks.empty()) throw Error("lstm cost model: empty block list");
    for (const auto& b : train[i].blocks) {
      const auto v = b.Vector();
      std::copy(v.begin(), v.end(), features.row(r++).begin());
    }
    targets[i] = train[i].cost;
  }
  feature_stats_ = Standardizer::Fit(features);
  target_stats_ = Standardizer::Fit(targets);
  Rng rng(Mix64(options_.seed ^ 0x157AULL));
  const auto hidden = static_cast<size_t>(options_.lstm_hidden);
  lstm_ = nn::LstmParams::Initialized(BlockFeature::kWidth, hidden, rng);
  head_ = nn::DenseLayer::Initialized(hidden, 1, nn::Activation::kIdentity, rng);
}

std::vector<std::vector<size_t>> LstmCostModel::Batches(
    std::span<const CostSample> train, Rng& rng) const {
  std::map<size_t, std::vector<size_t>> by_length;
  for (size_t i = 0; i < train.size(); ++i) {
    by_length[train[i].blocks.size()].push_back(i);
  }
  const auto batch = static_cast<size_t>(std::max(1, options_.batch_size));
  std::vector<std::vector<size_t>> out;
  for (auto& [length, indices] : by_length) {
    rng.Shuffle(indices);
    for (size_t i = 0; i < indices.size(); i += batch) {
      out.emplace_back(indices.begin() + static_cast<std::ptrdiff_t>(i),
                       indices.begin() + static_cast<std::ptrdiff_t>(
                                             std::min(indices.size(), i + batch)));
    }
  }
  rng.Shuffle(out);
  return out;
}

Tensor2 LstmCostModel::StepInput(std::span<const CostSample* const> batch,
                                 size_t t) const {
  Tensor2 x(batch.size(), BlockFeature::kWidth);
  for (size_t r = 0; r < batch.size(); ++r) {
    const auto v = batch[r]->blocks[t].Vector();
    for (size_t c = 0; c < BlockFeature::kWidth; ++c) {
      x(r, c) = feature_stats_.Normalize(v[c], c);
    }
  }
  return x;
}

double LstmCostModel::Predict(std::span<const BlockFeature> blocks) const {
  if (lstm_.hidden_size == 0) throw Error("lstm cost model is not fitted");
  if (blocks.empty()) throw Error("lstm cost model: empty block list");
  CostSample sample;
  sample.blocks.assign(blocks.begin(), blocks.end());
  const CostSample* batch[] = {&sample};
  nn::LstmState state = nn::LstmState::Zeros(1, lstm_.hidden_size);
  for (size_t t = 0; t < blocks.size(); ++t) {
    state = nn::LstmCellForward(lstm_, StepInput(batch, t), state);
  }
  return target_stats_.Denormalize(head_.Forward(state.h)[0], 0);
}

double LstmCostModel::LossAndGrad(std::span<const CostSample* const> batch,
                                  std::vector<Tensor2>* grads) const {
  const size_t steps = batch.front()->blocks.size();
  for (const CostSample* s : batch) {
    if (s->blocks.size() != steps) {
      throw ShapeError("lstm cost model: batch mixes sequence lengths");
    }
  }
  const size_t hidden = lstm_.hidden_size;
  std::vector<nn::LstmStepCache> caches(steps);
  nn::LstmState state = nn::LstmState::Zeros(batch.size(), hidden);
  for (size_t t = 0; t < steps; ++t) {
    state = nn::LstmCellForward(lstm_, StepInput(batch, t), state, &caches[t]);
  }
  nn::DenseLayer::Cache head_cache;
  const Tensor2 pred = head_.Forward(state.h, &head_cache);
  Tensor2 grad_pred;
  const double loss = nn::Mse(pred, TargetColumn(batch, target_stats_), &grad_pred);
  if (grads == nullptr) return loss;

  nn::DenseLayer::Grads head_grads = head_.ZeroGrads();
  Tensor2 dh = head_.Backward(state.h, head_cache, grad_pred, &head_grads);
  Tensor2 dc(batch.size(), hidden);
  nn::LstmParams lstm_grads = nn::LstmParams::Zeros(lstm_.input_size, hidden);
  for (size_t t = steps; t-- > 0;) {
    nn::LstmStepGrads g =
        nn::LstmCellBackward(lstm_, caches[t], dh, dc, &lstm_grads);
    dh = std::move(g.h_prev);
    dc = std::move(g.c_prev);
  }
  std::vector<Tensor2*> lg = lstm_grads.Parameters();
  for (size_t i = 0; i < lg.size(); ++i) (*grads)[i] += *lg[i];
  (*grads)[lg.size()] += head_grads.weight;
  (*grads)[lg.size() + 1] += head_grads.bias;
  return loss;
}

void LstmCostModel::Save(nn::TensorList& out) const {
  out.AddScalar("lstm.hidden", static_cast<double>(lstm_.hidden_size));
  feature_stats_.Save("lstm.features.", out);
  target_stats_.Save("lstm.target.", out);
  const auto params = lstm_.Parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    out.Add("lstm.param" + std::to_string(i), *params[i]);
  }
  out.Add("lstm.head.weight", head_.weight);
  out.Add("lstm.head.bias", head_.bias);
}

void LstmCostModel::Load(const nn::TensorList& in) {
  const auto hidden = static_cast<size_t>(in.GetScalar("lstm.hidden"));
  nn::LstmParams lstm = nn::LstmParams::Zeros(BlockFeature::kWidth, hidden);
  auto params = lstm.Parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    *params[i] = in.Get("lstm.param" + std::to_string(i), params[i]->rows(),
                        params[i]->cols());
  }
  nn::DenseLayer head(hidden, 1, nn::Activation::kIdentity);
  head.weight = in.Get("lstm.head.weight", 1, hidden);
  head.bias = in.Get("lstm.head.bias", 1, 1);
  feature_stats_.Load("lstm.features.", in);
  target_stats_.Load("lstm.target.", in);
  lstm_ = std::move(lstm);
  head_ = std::move(head);
  options_.lstm_hidden = static_cast<int>(hidden);
}

std::unique_ptr<CostModel> MakeCostModel(CostModelKind kind,
                                         const CostModelOptions& options) {
  switch (kind) {
    case CostModelKind::kSum:
      return std::make_unique<SumCostModel>();
    case CostModelKind::kLinear1:
      return std::make_unique<LinearCostModel>(false);
    case CostModelKind::kLinear2:
      return std::make_unique<LinearCostModel>(true);
    case CostModelKind::kMlp:
      return std::make_unique<MlpCostModel>(options);
    case CostModelKind::kLstm:
      return std::make_unique<LstmCostModel>(options);
  }
  throw Error("unknown cost model kind");
}

}  // namespace nasforge
