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

#include "nasforge/nn/mlp.h"

#include "nasforge/common/error.h"

namespace nasforge::nn {

Mlp::Mlp(const std::vector<size_t>& sizes, Activation hidden, Rng& rng) {
  if (sizes.size() < 2) throw ShapeError("Mlp: need at least in and out sizes");
  for (size_t i = 0; i + 1 < sizes.size(); ++i) {
    const bool last = i + 2 == sizes.size();
    layers_.push_back(DenseLayer::Initialized(
        sizes[i], sizes[i + 1], last ? Activation::kIdentity : hidden, rng));
  }
}

Tensor2 Mlp::Forward(const Tensor2& x, Tape* tape) const {
  if (tape != nullptr) {
    tape->inputs.clear();
    tape->caches.assign(layers_.size(), {});
  }
  Tensor2 h = x;
  for (size_t i = 0; i < layers_.size(); ++i) {
    if (tape != nullptr) tape->inputs.push_back(h);
    h = layers_[i].Forward(h, tape != nullptr ? &tape->caches[i] : nullptr);
  }
  return h;
}

Tensor2 Mlp::Backward(const Tape& tape, const Tensor2& grad_out,
                      std::vector<Tensor2>* grads) const {
  if (grads != nullptr && grads->size() != 2 * layers_.size()) {
    throw ShapeError("Mlp::Backward: gradient list has wrong length");
  }
  Tensor2 g = grad_out;
  for (size_t i = layers_.size(); i-- > 0;) {
    DenseLayer::Grads lg = layers_[i].ZeroGrads();
    g = layers_[i].Backward(tape.inputs[i], tape.caches[i], g, &lg);
    if (grads != nullptr) {
      (*grads)[2 * i] += lg.weight;
      (*grads)[2 * i + 1] += lg.bias;
    }
  }
  return g;
}

std::vector<Tensor2*> Mlp::Parameters() {
  std::vector<Tensor2*> out;
  for (auto& layer : layers_) {
    out.push_back(&layer.weight);
    out.push_back(&layer.bias);
  }
  return out;
}

std::vector<Tensor2> Mlp::ZeroGrads() const {
  std::vector<Tensor2> out;
  for (const auto& layer : layers_) {
    out.emplace_back(layer.weight.rows(), layer.weight.cols());
    out.emplace_back(1, layer.bias.cols());
  }
  return out;
}

size_t Mlp::ParameterCount() const {
  size_t n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

void Mlp::Save(const std::string& prefix, TensorList& out) const {
  out.AddScalar(prefix + "layers", static_cast<double>(layers_.size()));
  for (size_t i = 0; i < layers_.size(); ++i) {
    const std::string p = prefix + std::to_string(i) + ".";
    out.Add(p + "weight", layers_[i].weight);
    out.Add(p + "bias", layers_[i].bias);
    out.AddScalar(p + "activation",
                  static_cast<double>(static_cast<int>(layers_[i].activation)));
  }
}

void Mlp::Load(const std::string& prefix, const TensorList& in) {
  const auto n = static_cast<size_t>(in.GetScalar(prefix + "layers"));
  std::vector<DenseLayer> layers;
  for (size_t i = 0; i < n; ++i) {
    const std::string p = prefix + std::to_string(i) + ".";
    DenseLayer layer;
    layer.weight = in.Get(p + "weight");
    layer.bias = in.Get(p + "bias", 1, layer.weight.rows());
    const int act = static_cast<int>(in.GetScalar(p + "activation"));
    if (act < 0 || act > 3) throw CheckpointError("bad activation in " + p);
    layer.activation = static_cast<Activation>(act);
    if (i > 0 && layer.weight.cols() != layers.back().weight.rows()) {
      throw CheckpointError("layer shapes do not chain at " + p);
    }
    layers.push_back(std::move(layer));
  }
  layers_ = std::move(layers);
}

}  // namespace nasforge::nn
