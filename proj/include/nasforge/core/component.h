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

#ifndef NASFORGE_CORE_COMPONENT_H_
#define NASFORGE_CORE_COMPONENT_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace nasforge {

// The seven roles a search session is assembled from.
enum class ComponentKind {
  kDataset = 0,
  kObjective,
  kSearchSpace,
  kController,
  kWeightsManager,
  kEvaluator,
  kTrainer,
};

inline constexpr std::array<ComponentKind, 7> kAllComponentKinds = {
    ComponentKind::kDataset,        ComponentKind::kObjective,
    ComponentKind::kSearchSpace,    ComponentKind::kController,
    ComponentKind::kWeightsManager, ComponentKind::kEvaluator,
    ComponentKind::kTrainer,
};

// Config-file spelling, e.g. "search_space".
std::string_view ComponentKindName(ComponentKind kind);
std::optional<ComponentKind> ParseComponentKind(std::string_view name);

class Component {
 public:
  virtual ~Component() = default;
  virtual ComponentKind kind() const = 0;
};

}  // namespace nasforge

#endif  // NASFORGE_CORE_COMPONENT_H_
