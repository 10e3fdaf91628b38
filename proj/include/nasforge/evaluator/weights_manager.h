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

#ifndef NASFORGE_EVALUATOR_WEIGHTS_MANAGER_H_
#define NASFORGE_EVALUATOR_WEIGHTS_MANAGER_H_

#include <memory>
#include <string>
#include <vector>

#include "nasforge/common/rng.h"
#include "nasforge/core/component.h"
#include "nasforge/core/rollout.h"
#include "nasforge/nn/activation.h"
#include "nasforge/nn/tensor_io.h"
#include "nasforge/search_space/search_space.h"
#include "nasforge/search_space/toy_mlp_space.h"

namespace nasforge {

class WeightsManager : public Component {
 public:
  explicit WeightsManager(std::shared_ptr<const SearchSpace> space)
      : space_(std::move(space)) {}

  ComponentKind kind() const final { return ComponentKind::kWeightsManager; }
  virtual std::string type_name() const = 0;
  const SearchSpace& space() const { return *space_; }

  // Throws GenotypeError when the genotype is not valid in the space.
  virtual std::shared_ptr<CandidateHandle> AssembleCandidate(
      const DiscreteRollout& rollout) const = 0;

  virtual void Save(nn::TensorList& out) const { (void)out; }
  virtual void Load(const nn::TensorList& in) { (void)in; }

 protected:
  std::shared_ptr<const SearchSpace> space_;
};

// Validates the genotype and attaches no weights.
class NullWeightsManager : public WeightsManager {
 public:
  using WeightsManager::WeightsManager;
  std::string type_name() const override { return "none"; }
  std::shared_ptr<CandidateHandle> AssembleCandidate(
      const DiscreteRollout& rollout) const override;
};

// Maximal-width dense layers shared by every candidate. Layer l weight is
// (out_max x in_max); the output layer is linear.
struct SupernetStorage {
  std::vector<nn::Tensor2> weights;
  std::vector<nn::Tensor2> biases;
};

// A candidate's slice of one supernet layer: the leading rows x cols block
// of the weight and the leading rows of the bias.
struct LayerView {
  size_t layer = 0;
  size_t rows = 0;
  size_t cols = 0;
  nn::Activation activation = nn::Activation::kIdentity;
};

class CandidateNet : public CandidateHandle {
 public:
  CandidateNet(std::shared_ptr<SupernetStorage> storage, Genotype genotype,
               std::vector<LayerView> views)
      : storage_(std::move(storage)),
        genotype_(std::move(genotype)),
        views_(std::move(views)) {}

  const Genotype& genotype() const { return genotype_; }
  const std::vector<LayerView>& views() const { return views_; }
  size_t ParameterCount() const;

  nn::Tensor2 Forward(const nn::Tensor2& x) const;
  // Mean squared error on (x, y).
  double Loss(const nn::Tensor2& x, const nn::Tensor2& y) const;
  // One SGD step on the viewed sub-blocks; returns the pre-step loss.
  double TrainStep(const nn::Tensor2& x, const nn::Tensor2& y,
                   double learning_rate);

 private:
  nn::Tensor2 SliceWeight(const LayerView& v) const;
  nn::Tensor2 SliceBias(const LayerView& v) const;

  std::shared_ptr<SupernetStorage> storage_;
  Genotype genotype_;
  std::vector<LayerView> views_;
};

// Weight-sharing supernet over a toy MLP space with prefix slicing.
class SupernetWeightsManager : public WeightsManager {
 public:
  SupernetWeightsManager(std::shared_ptr<const ToyMlpSpace> space, int input_dim,
                         int output_dim, double learning_rate, Rng& rng);

  std::string type_name() const override { return "supernet"; }
  std::shared_ptr<CandidateHandle> AssembleCandidate(
      const DiscreteRollout& rollout) const override;
  std::shared_ptr<CandidateNet> Assemble(const Genotype& genotype) const;

  double learning_rate() const { return learning_rate_; }
  const SupernetStorage& storage() const { return *storage_; }
  SupernetStorage& mutable_storage() { return *storage_; }
  size_t ParameterCount() const;

  void Save(nn::TensorList& out) const override;
  void Load(const nn::TensorList& in) override;

 private:
  std::shared_ptr<const ToyMlpSpace> toy_space_;
  int input_dim_;
  int output_dim_;
  double learning_rate_;
  std::shared_ptr<SupernetStorage> storage_;
};

}  // namespace nasforge

#endif  // NASFORGE_EVALUATOR_WEIGHTS_MANAGER_H_
