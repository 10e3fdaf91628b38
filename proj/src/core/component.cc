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

#include "nasforge/core/component.h"

namespace nasforge {

std::string_view ComponentKindName(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kDataset:
      return "dataset";
    case ComponentKind::kObjective:
      return "objective";
    case ComponentKind::kSearchSpace:
      return "search_space";
    case ComponentKind::kController:
      return "controller";
    case ComponentKind::kWeightsManager:
      return "weights_manager";
    case ComponentKind::kEvaluator:
      return "evaluator";
    case ComponentKind::kTrainer:
      return "trainer";
  }
  return "unknown";
}

std::optional<ComponentKind> ParseComponentKind(std::string_view name) {
  for (ComponentKind kind : kAllComponentKinds) {
    if (ComponentKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace nasforge
