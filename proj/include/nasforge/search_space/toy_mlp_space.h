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

#ifndef NASFORGE_SEARCH_SPACE_TOY_MLP_SPACE_H_
#define NASFORGE_SEARCH_SPACE_TOY_MLP_SPACE_H_

#include <string>
#include <vector>

#include "nasforge/nn/activation.h"
#include "nasforge/search_space/search_space.h"

namespace nasforge {

// Per layer: a width and an activation. Layout [w0, a0, w1, a1, ...].
// Text form: "mlp(32-relu,16-tanh,8-relu)".
class ToyMlpSpace : public SearchSpace {
 public:
  ToyMlpSpace(int num_layers, std::vector<int> widths,
              std::vector<std::string> activations);

  std::string type_name() const override { return "toy_mlp"; }
  int num_layers() const { return num_layers_; }
  const std::vector<int>& widths() const { return widths_; }
  int max_width() const;
  const std::vector<nn::Activation>& activations() const { return activations_; }

  int LayerWidth(const Genotype& genotype, int layer) const;
  nn::Activation LayerActivation(const Genotype& genotype, int layer) const;

  std::string ToString(const Genotype& genotype) const override;
  Genotype Parse(std::string_view text) const override;

 private:
  int num_layers_;
  std::vector<int> widths_;
  std::vector<nn::Activation> activations_;
};

}  // namespace nasforge

#endif  // NASFORGE_SEARCH_SPACE_TOY_MLP_SPACE_H_
