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

#ifndef NASFORGE_HWCOST_COST_MODEL_H_
#define NASFORGE_HWCOST_COST_MODEL_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nasforge/core/rollout.h"
#include "nasforge/hwcost/profiling.h"
#include "nasforge/nn/lstm.h"
#include "nasforge/nn/mlp.h"
#include "nasforge/nn/tensor_io.h"

namespace nasforge {

struct CostSample {
  Genotype genotype;
  std::vector<BlockFeature> blocks;
  double cost = 0.0;
};

enum class CostModelKind { kSum, kLinear1, kLinear2, kMlp, kLstm };

std::string_view CostModelKindName(CostModelKind kind);
std::optional<CostModelKind> ParseCostModelKind(std::string_view name);

struct CostModelOptions {
  int epochs = 200;
  double learning_rate = 1e-3;
  int batch_size = 64;
  // Padded input length of the MLP (5 stages x 4 blocks).
  int mlp_pad = 20;
  std::vector<size_t> mlp_hidden = {64, 64};
  int lstm_hidden = 32;
  uint64_t seed = 0;
};

struct FitReport {
  // Training MSE in native units, before and after fitting.
  double initial_mse = 0.0;
  double final_mse = 0.0;
};

// Per-column z-score statistics; zero-variance columns use std 1.
class Standardizer {
 public:
  Standardizer() = default;
  // rows x cols observations.
  static Standardizer Fit(const nn::Tensor2& data);
  static Standardizer Identity(size_t cols);

  double Normalize(double value, size_t col) const {
    return (value - mean_[col]) / std_[col];
  }
  double Denormalize(double value, size_t col) const {
    return value * std_[col] + mean_[col];
  }
  nn::Tensor2 Normalize(const nn::Tensor2& data) const;
  nn::Tensor2 Denormalize(const nn::Tensor2& data) const;

  size_t cols() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return std_; }

  void Save(const std::string& prefix, nn::TensorList& out) const;
  void Load(const std::string& prefix, const nn::TensorList& in);

 private:
  std::vector<double> mean_;
  std::vector<double> std_;
};

// Network cost from a block feature list.
class CostModel {
 public:
  virtual ~CostModel() = default;
  virtual CostModelKind kind() const = 0;
  std::string name() const { return std::string(CostModelKindName(kind())); }

  // Throws Error on an empty split (and for linear models, on singular
  // normal equations).
  virtual FitReport Fit(std::span<const CostSample> train) = 0;
  virtual double Predict(std::span<const BlockFeature> blocks) const = 0;

  virtual void Save(nn::TensorList& out) const = 0;
  virtual void Load(const nn::TensorList& in) = 0;
};

std::unique_ptr<CostModel> MakeCostModel(CostModelKind kind,
                                         const CostModelOptions& options = {});

double SumOfCosts(std::span<const BlockFeature> blocks);

// Naive addition: prediction is the sum of block costs.
class SumCostModel : public CostModel {
 public:
  CostModelKind kind() const override { return CostModelKind::kSum; }
  FitReport Fit(std::span<const CostSample> train) override;
  double Predict(std::span<const BlockFeature> blocks) const override {
    return SumOfCosts(blocks);
  }
  void Save(nn::TensorList&) const override {}
  void Load(const nn::TensorList&) override {}
};

// Least squares on (S) -> a S + b, or (S, n) -> a S + b n + c, solved
// through the normal equations.
class LinearCostModel : public CostModel {
 public:
  explicit LinearCostModel(bool use_block_count)
      : use_block_count_(use_block_count) {}

  CostModelKind kind() const override {
    return use_block_count_ ? CostModelKind::kLinear2 : CostModelKind::kLinear1;
  }
  FitReport Fit(std::span<const CostSample> train) override;
  double Predict(std::span<const BlockFeature> blocks) const override;
  void Save(nn::TensorList& out) const override;
  void Load(const nn::TensorList& in) override;

  // (a, b) or (a, b, c).
  const std::vector<double>& coefficients() const { return coefficients_; }
  void set_coefficients(std::vector<double> c) { coefficients_ = std::move(c); }

 private:
  bool use_block_count_;
  std::vector<double> coefficients_;
};

// Solves (X^T X) w = X^T y for the rows of `x`. Throws NumericError when
// the system is singular.
std::vector<double> SolveNormalEquations(const std::vector<std::vector<double>>& x,
                                         const std::vector<double>& y);

// Shared training loop state for the two neural cost models.
class NeuralCostModel : public CostModel {
 public:
  FitReport Fit(std::span<const CostSample> train) override;

  // Mean squared error in normalized target units over `batch`;
  // gradients (aligned with Parameters()) are added into `grads`.
  virtual double LossAndGrad(std::span<const CostSample* const> batch,
                             std::vector<nn::Tensor2>* grads) const = 0;
  virtual std::vector<nn::Tensor2*> Parameters() = 0;
  std::vector<nn::Tensor2> ZeroGrads();

  const Standardizer& target_stats() const { return target_stats_; }

 protected:
  explicit NeuralCostModel(CostModelOptions options)
      : options_(std::move(options)) {}

  // Sets up input statistics and fresh parameters for `train`.
  virtual void Prepare(std::span<const CostSample> train) = 0;
  // Minibatches of sample indices for one epoch.
  virtual std::vector<std::vector<size_t>> Batches(
      std::span<const CostSample> train, Rng& rng) const;

  CostModelOptions options_;
  Standardizer target_stats_;
};

// Two hidden relu layers over the zero-padded, z-scored vector of block
// costs.
class MlpCostModel : public NeuralCostModel {
 public:
  explicit MlpCostModel(CostModelOptions options = {})
      : NeuralCostModel(std::move(options)) {}

  CostModelKind kind() const override { return CostModelKind::kMlp; }
  double Predict(std::span<const BlockFeature> blocks) const override;
  double LossAndGrad(std::span<const CostSample* const> batch,
                     std::vector<nn::Tensor2>* grads) const override;
  std::vector<nn::Tensor2*> Parameters() override { return net_.Parameters(); }
  void Save(nn::TensorList& out) const override;
  void Load(const nn::TensorList& in) override;

  // Normalized, padded input row. Throws Error when the block count
  // exceeds the padding length.
  std::vector<double> InputRow(std::span<const BlockFeature> blocks) const;

 protected:
  void Prepare(std::span<const CostSample> train) override;

 private:
  std::vector<double> RawRow(std::span<const BlockFeature> blocks) const;

  nn::Mlp net_;
  Standardizer input_stats_;
};

// LSTM over per-block feature vectors (cost, in C/H/W, out C/H/W, kernel,
// stride); the final hidden state feeds a linear output unit.
class LstmCostModel : public NeuralCostModel {
 public:
  explicit LstmCostModel(CostModelOptions options = {})
      : NeuralCostModel(std::move(options)) {}

  CostModelKind kind() const override { return CostModelKind::kLstm; }
  double Predict(std::span<const BlockFeature> blocks) const override;
  double LossAndGrad(std::span<const CostSample* const> batch,
                     std::vector<nn::Tensor2>* grads) const override;
  std::vector<nn::Tensor2*> Parameters() override;
  void Save(nn::TensorList& out) const override;
  void Load(const nn::TensorList& in) override;

 protected:
  void Prepare(std::span<const CostSample> train) override;
  // Batches hold equal-length sequences only.
  std::vector<std::vector<size_t>> Batches(std::span<const CostSample> train,
                                           Rng& rng) const override;

 private:
  // Normalized batch x 9 input for step t of equal-length sequences.
  nn::Tensor2 StepInput(std::span<const CostSample* const> batch, size_t t) const;

  nn::LstmParams lstm_;
  nn::DenseLayer head_;
  Standardizer feature_stats_;
};

}  // namespace nasforge

#endif  // NASFORGE_HWCOST_COST_MODEL_H_
