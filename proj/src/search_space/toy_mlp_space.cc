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

#include "nasforge/search_space/toy_mlp_space.h"

#include <algorithm>

#include "nasforge/common/error.h"

namespace nasforge {
namespace {

std::vector<int> MlpCardinalities(int num_layers, size_t widths,
                                  size_t activations) {
  if (num_layers < 1) throw ConfigError("toy_mlp needs >= 1 layer");
  if (widths == 0 || activations == 0) {
    throw ConfigError("toy_mlp needs non-empty width and activation choices");
  }
  std::vector<int> out;
  for (int l = 0; l < num_layers; ++l) {
    out.push_back(static_cast<int>(widths));
    out.push_back(static_cast<int>(activations));
  }
  return out;
}

}  // namespace

ToyMlpSpace::ToyMlpSpace(int num_layers, std::vector<int> widths,
                         std::vector<std::string> activations)
    : SearchSpace(MlpCardinalities(num_layers, widths.size(), activations.size())),
      num_layers_(num_layers),
      widths_(std::move(widths)) {
  for (int w : widths_) {
    if (w < 1) throw ConfigError("toy_mlp widths must be >= 1");
  }
  for (const auto& name : activations) {
    auto act = nn::ParseActivation(name);
    if (!act) throw ConfigError("toy_mlp: unknown activation '" + name + "'");
    if (std::find(activations_.begin(), activations_.end(), *act) !=
        activations_.end()) {
      throw ConfigError("toy_mlp: duplicate activation '" + name + "'");
    }
    activations_.push_back(*act);
  }
  for (size_t i = 0; i < widths_.size(); ++i) {
    for (size_t j = i + 1; j < widths_.size(); ++j) {
      if (widths_[i] == widths_[j]) throw ConfigError("toy_mlp: duplicate width");
    }
  }
}

int ToyMlpSpace::max_width() const {
  return *std::max_element(widths_.begin(), widths_.end());
}

int ToyMlpSpace::LayerWidth(const Genotype& genotype, int layer) const {
  return widths_.at(genotype.at(2 * layer));
}

nn::Activation ToyMlpSpace::LayerActivation(const Genotype& genotype,
                                            int layer) const {
  return activations_.at(genotype.at(2 * layer + 1));
}

std::string ToyMlpSpace::ToString(const Genotype& genotype) const {
  Validate(genotype);
  std::string out = "mlp(";
  for (int l = 0; l < num_layers_; ++l) {
    if (l > 0) out += ",";
    out += std::to_string(LayerWidth(genotype, l)) + "-" +
           std::string(nn::ActivationName(LayerActivation(genotype, l)));
  }
  return out + ")";
}

Genotype ToyMlpSpace::Parse(std::string_view text) const {
  GenotypeScanner scan(text);
  scan.Expect("mlp(");
  Genotype g;
  for (int l = 0; l < num_layers_; ++l) {
    if (l > 0) scan.Expect(",");
    const std::string width_token = scan.CurrentToken();
    const int width = scan.ReadInt("width");
    auto wit = std::find(widths_.begin(), widths_.end(), width);
    if (wit == widths_.end()) {
      std::string choices;
      for (int w : widths_) choices += (choices.empty() ? "" : ",") + std::to_string(w);
      scan.FailToken(width_token, "invalid width at layer " +
                                      std::to_string(l + 1) + " (choices " +
                                      choices + ")");
    }
    scan.Expect("-");
    const std::string act_token = scan.CurrentToken();
    const std::string name = scan.ReadIdent("activation");
    auto act = nn::ParseActivation(name);
    auto ait = act ? std::find(activations_.begin(), activations_.end(), *act)
                   : activations_.end();
    if (ait == activations_.end()) {
      scan.FailToken(act_token, "invalid activation at layer " +
                                    std::to_string(l + 1));
    }
    g.push_back(static_cast<int>(wit - widths_.begin()));
    g.push_back(static_cast<int>(ait - activations_.begin()));
  }
  if (scan.Peek(",")) scan.Fail("too many layers (expected " +
                                std::to_string(num_layers_) + ")");
  scan.Expect(")");
  scan.ExpectEnd();
  return g;
}

}  // namespace nasforge
