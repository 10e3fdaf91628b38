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

#include "nasforge/evaluator/weights_manager.h"

#include "nasforge/common/error.h"
#include "nasforge/nn/dense.h"
#include "nasforge/nn/loss.h"

namespace nasforge {

using nn::Tensor2;

std::shared_ptr<CandidateHandle> NullWeightsManager::AssembleCandidate(
    const DiscreteRollout& rollout) const {
  space().Validate(rollout.genotype);
  return nullptr;
}

size_t CandidateNet::ParameterCount() const {
  size_t n = 0;
  for (const auto& v : views_) n += v.rows * v.cols + v.rows;
  return n;
}

Tensor2 CandidateNet::SliceWeight(const LayerView& v) const {
  const Tensor2& full = storage_->weights[v.layer];
  Tensor2 out(v.rows, v.cols);
  for (size_t r = 0; r < v.rows; ++r) {
    for (size_t c = 0; c < v.cols; ++c) out(r, c) = full(r, c);
  }
  return out;
}

Tensor2 CandidateNet::SliceBias(const LayerView& v) const {
  const Tensor2& full = storage_->biases[v.layer];
  Tensor2 out(1, v.rows);
  for (size_t r = 0; r < v.rows; ++r) out[r] = full[r];
  return out;
}

Tensor2 CandidateNet::Forward(const Tensor2& x) const {
  Tensor2 a = x;
  for (const auto& v : views_) {
    if (a.cols() != v.cols) {
      throw ShapeError("candidate input has " + std::to_string(a.cols()) +
                       " columns, expected " + std::to_string(v.cols));
    }
    Tensor2 z = nn::MatMulTransB(a, SliceWeight(v));
    nn::AddRowBroadcast(z, SliceBias(v));
    a = nn::Apply(v.activation, z);
  }
  return a;
}

double CandidateNet::Loss(const Tensor2& x, const Tensor2& y) const {
  return nn::Mse(Forward(x), y);
}

double CandidateNet::TrainStep(const Tensor2& x, const Tensor2& y,
                               double learning_rate) {
  std::vector<Tensor2> inputs;
  std::vector<Tensor2> pre;
  std::vector<Tensor2> out;
  std::vector<Tensor2> weights;
  Tensor2 a = x;
  for (const auto& v : views_) {
    if (a.cols() != v.cols) throw ShapeError("candidate input shape mismatch");
    inputs.push_back(a);
    weights.push_back(SliceWeight(v));
    Tensor2 z = nn::MatMulTransB(a, weights.back());
    nn::AddRowBroadcast(z, SliceBias(v));
    a = nn::Apply(v.activation, z);
    pre.push_back(std::move(z));
    out.push_back(a);
  }
  Tensor2 grad;
  const double loss = nn::Mse(a, y, &grad);
  std::vector<Tensor2> weight_grads(views_.size());
  std::vector<Tensor2> bias_grads(views_.size());
  for (size_t l = views_.size(); l-- > 0;) {
    const LayerView& v = views_[l];
    Tensor2 dpre = grad;
    for (size_t i = 0; i < dpre.size(); ++i) {
      dpre[i] *= nn::Derivative(v.activation, pre[l][i], out[l][i]);
    }
    weight_grads[l] = nn::MatMulTransA(dpre, inputs[l]);
    bias_grads[l] = nn::SumRows(dpre);
    if (l > 0) grad = nn::MatMul(dpre, weights[l]);
  }
  for (size_t l = 0; l < views_.size(); ++l) {
    if (!weight_grads[l].AllFinite() || !bias_grads[l].AllFinite()) {
      throw NumericError("non-finite gradient in candidate training step");
    }
  }
  for (size_t l = 0; l < views_.size(); ++l) {
    const LayerView& v = views_[l];
    Tensor2& w = storage_->weights[v.layer];
    Tensor2& b = storage_->biases[v.layer];
    for (size_t r = 0; r < v.rows; ++r) {
      for (size_t c = 0; c < v.cols; ++c) {
        w(r, c) -= learning_rate * weight_grads[l](r, c);
      }
      b[r] -= learning_rate * bias_grads[l][r];
    }
  }
  return loss;
}

SupernetWeightsManager::SupernetWeightsManager(
    std::shared_ptr<const ToyMlpSpace> space, int input_dim, int output_dim,
    double learning_rate, Rng& rng)
    : WeightsManager(space),
      toy_space_(std::move(space)),
      input_dim_(input_dim),
      output_dim_(output_dim),
      learning_rate_(learning_rate),
      storage_(std::make_shared<SupernetStorage>()) {
  if (input_dim_ < 1 || output_dim_ < 1) {
    throw ConfigError("supernet: input and output dimensions must be >= 1");
  }
  if (!(learning_rate_ > 0)) throw ConfigError("supernet: learning_rate must be > 0");
  const auto width = static_cast<size_t>(toy_space_->max_width());
  size_t in = static_cast<size_t>(input_dim_);
  for (int l = 0; l <= toy_space_->num_layers(); ++l) {
    const size_t out = l == toy_space_->num_layers()
                           ? static_cast<size_t>(output_dim_)
                           : width;
    nn::DenseLayer layer =
        nn::DenseLayer::Initialized(in, out, nn::Activation::kIdentity, rng);
    storage_->weights.push_back(std::move(layer.weight));
    storage_->biases.push_back(std::move(layer.bias));
    in = out;
  }
}

size_t SupernetWeightsManager::ParameterCount() const {
  size_t n = 0;
  for (size_t l = 0; l < storage_->weights.size(); ++l) {
    n += storage_->weights[l].size() + storage_->biases[l].size();
  }
  return n;
}

std::shared_ptr<CandidateNet> SupernetWeightsManager::Assemble(
    const Genotype& genotype) const {
  toy_space_->Validate(genotype);
  std::vector<LayerView> views;
  size_t cols = static_cast<size_t>(input_dim_);
  const int layers = toy_space_->num_layers();
  for (int l = 0; l < layers; ++l) {
    const auto rows = static_cast<size_t>(toy_space_->LayerWidth(genotype, l));
    views.push_back(LayerView{static_cast<size_t>(l), rows, cols,
                              toy_space_->LayerActivation(genotype, l)});
    cols = rows;
  }
  views.push_back(LayerView{static_cast<size_t>(layers),
                            static_cast<size_t>(output_dim_), cols,
                            nn::Activation::kIdentity});
  return std::make_shared<CandidateNet>(storage_, genotype, std::move(views));
}

std::shared_ptr<CandidateHandle> SupernetWeightsManager::AssembleCandidate(
    const DiscreteRollout& rollout) const {
  return Assemble(rollout.genotype);
}

void SupernetWeightsManager::Save(nn::TensorList& out) const {
  for (size_t l = 0; l < storage_->weights.size(); ++l) {
    out.Add("supernet.w" + std::to_string(l), storage_->weights[l]);
    out.Add("supernet.b" + std::to_string(l), storage_->biases[l]);
  }
}

void SupernetWeightsManager::Load(const nn::TensorList& in) {
  SupernetStorage loaded;
  for (size_t l = 0; l < storage_->weights.size(); ++l) {
    const Tensor2& w = storage_->weights[l];
    loaded.weights.push_back(
        in.Get("supernet.w" + std::to_string(l), w.rows(), w.cols()));
    loaded.biases.push_back(in.Get("supernet.b" + std::to_string(l), 1, w.rows()));
  }
  // In place, so assembled candidates keep pointing at live storage.
  *storage_ = std::move(loaded);
}

}  // namespace nasforge
