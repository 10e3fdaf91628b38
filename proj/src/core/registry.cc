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

#include "nasforge/core/registry.h"

#include "nasforge/common/error.h"

namespace nasforge {

void ComponentRegistry::Register(ComponentKind kind, std::string name,
                                 ComponentSchema schema,
                                 ComponentConstructor constructor,
                                 std::string description) {
  auto key = std::make_pair(kind, name);
  if (entries_.count(key) > 0) {
    throw DuplicateRegistrationError(
        "component already registered: " +
        std::string(ComponentKindName(kind)) + "/" + name);
  }
  entries_.emplace(std::move(key),
                   RegistryEntry{kind, std::move(name), std::move(description),
                                 std::move(schema), std::move(constructor)});
}

bool ComponentRegistry::Contains(ComponentKind kind,
                                 std::string_view name) const {
  return entries_.count(std::make_pair(kind, std::string(name))) > 0;
}

const RegistryEntry& ComponentRegistry::Lookup(ComponentKind kind,
                                               std::string_view name) const {
  auto it = entries_.find(std::make_pair(kind, std::string(name)));
  if (it == entries_.end()) {
    std::string known;
    for (const auto& n : Names(kind)) known += (known.empty() ? "" : ", ") + n;
    throw UnknownComponentError(
        "unknown component " + std::string(ComponentKindName(kind)) + " '" +
        std::string(name) + "' (registered: " +
        (known.empty() ? std::string("none") : known) + ")");
  }
  return it->second;
}

std::vector<std::string> ComponentRegistry::Names(ComponentKind kind) const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_) {
    if (key.first == kind) out.push_back(key.second);
  }
  return out;
}

std::vector<const RegistryEntry*> ComponentRegistry::Entries() const {
  std::vector<const RegistryEntry*> out;
  for (const auto& [key, entry] : entries_) out.push_back(&entry);
  return out;
}

const ComponentRegistry& ComponentRegistry::Global() {
  static const ComponentRegistry* registry = [] {
    auto* r = new ComponentRegistry();
    RegisterBuiltinComponents(*r);
    return r;
  }();
  return *registry;
}

}  // namespace nasforge
