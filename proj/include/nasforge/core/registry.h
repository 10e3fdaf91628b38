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

#ifndef NASFORGE_CORE_REGISTRY_H_
#define NASFORGE_CORE_REGISTRY_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nasforge/core/component.h"
#include "nasforge/core/config.h"

namespace nasforge {

class BuildContext;

using ComponentConstructor = std::function<std::shared_ptr<Component>(
    const ComponentParams&, BuildContext&)>;

struct RegistryEntry {
  ComponentKind kind;
  std::string name;
  std::string description;
  ComponentSchema schema;
  ComponentConstructor constructor;
};

// (kind, name) -> constructor table. Populated at startup, then read-only;
// concurrent lookups on a frozen registry are safe.
class ComponentRegistry {
 public:
  void Register(ComponentKind kind, std::string name, ComponentSchema schema,
                ComponentConstructor constructor, std::string description = "");

  bool Contains(ComponentKind kind, std::string_view name) const;
  // Throws UnknownComponentError listing the names registered for `kind`.
  const RegistryEntry& Lookup(ComponentKind kind, std::string_view name) const;
  std::vector<std::string> Names(ComponentKind kind) const;
  // Sorted by kind, then name.
  std::vector<const RegistryEntry*> Entries() const;

  // Process-wide registry holding every built-in component.
  static const ComponentRegistry& Global();

 private:
  std::map<std::pair<ComponentKind, std::string>, RegistryEntry> entries_;
};

// Defined with the built-in components.
void RegisterBuiltinComponents(ComponentRegistry& registry);

}  // namespace nasforge

#endif  // NASFORGE_CORE_REGISTRY_H_
