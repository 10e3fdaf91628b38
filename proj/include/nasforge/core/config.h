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

#ifndef NASFORGE_CORE_CONFIG_H_
#define NASFORGE_CORE_CONFIG_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nasforge/core/component.h"

namespace nasforge {

// One node of a configuration tree. Scalars keep their type through a
// text round trip; mappings keep key order.
class ConfigNode {
 public:
  using Sequence = std::vector<ConfigNode>;
  using Mapping = std::vector<std::pair<std::string, ConfigNode>>;
  enum class Type { kNull, kBool, kInt, kReal, kString, kSequence, kMapping };

  ConfigNode() = default;
  ConfigNode(bool v) : value_(v) {}  // NOLINT
  ConfigNode(int v) : value_(int64_t{v}) {}  // NOLINT
  ConfigNode(int64_t v) : value_(v) {}  // NOLINT
  ConfigNode(double v) : value_(v) {}  // NOLINT
  ConfigNode(const char* v) : value_(std::string(v)) {}  // NOLINT
  ConfigNode(std::string v) : value_(std::move(v)) {}  // NOLINT
  ConfigNode(Sequence v) : value_(std::move(v)) {}  // NOLINT
  ConfigNode(Mapping v) : value_(std::move(v)) {}  // NOLINT

  static ConfigNode EmptyMapping() { return ConfigNode(Mapping{}); }
  static ConfigNode EmptySequence() { return ConfigNode(Sequence{}); }

  Type type() const { return static_cast<Type>(value_.index()); }
  bool IsNull() const { return type() == Type::kNull; }
  bool IsScalar() const;
  bool IsMapping() const { return type() == Type::kMapping; }
  bool IsSequence() const { return type() == Type::kSequence; }

  bool AsBool() const;
  int64_t AsInt() const;
  // Ints are promoted.
  double AsReal() const;
  const std::string& AsString() const;
  const Sequence& AsSequence() const;
  Sequence& AsSequence();
  const Mapping& AsMapping() const;
  Mapping& AsMapping();

  const ConfigNode* Find(std::string_view key) const;
  ConfigNode* Find(std::string_view key);
  bool Has(std::string_view key) const { return Find(key) != nullptr; }
  // Replaces an existing key in place or appends.
  void Set(std::string_view key, ConfigNode value);

  bool operator==(const ConfigNode& other) const { return value_ == other.value_; }

 private:
  std::variant<std::monostate, bool, int64_t, double, std::string, Sequence,
               Mapping>
      value_;
};

std::string_view ConfigTypeName(ConfigNode::Type type);

// Parses the YAML-subset config text. Throws ConfigParseError with the
// offending line.
ConfigNode ParseConfigText(std::string_view text);
ConfigNode ReadConfigFile(const std::string& path);

// Block-style emitter. `comment`, when set, is asked for a trailing
// comment for every key path (dotted) and may return "".
std::string EmitConfigText(
    const ConfigNode& root,
    const std::function<std::string(const std::string&)>& comment = {});

enum class ParamType {
  kBool,
  kInt,
  kReal,
  kString,
  kIntList,
  kRealList,
  kStringList,
  kRealMap,
};

struct ParamSpec {
  std::string name;
  ParamType type;
  ConfigNode default_value;
  std::string doc;
};

struct ComponentSchema {
  std::vector<ParamSpec> params;
  const ParamSpec* Find(std::string_view name) const;
};

// Checks `value` against `type`; throws ValidationError at `key_path`.
void CheckParamType(const ConfigNode& value, ParamType type,
                    const std::string& key_path);

// Validated parameters of one component with schema defaults filled in.
class ComponentParams {
 public:
  ComponentParams() = default;
  ComponentParams(std::string path, ConfigNode values)
      : path_(std::move(path)), values_(std::move(values)) {}

  // Applies schema defaults and type checks to a raw component subtree.
  static ComponentParams FromSubtree(const std::string& path,
                                     const ConfigNode& subtree,
                                     const ComponentSchema& schema);

  const std::string& path() const { return path_; }
  std::string KeyPath(std::string_view key) const;
  const ConfigNode& values() const { return values_; }

  bool Has(std::string_view key) const { return values_.Has(key); }
  bool GetBool(std::string_view key) const;
  int64_t GetInt(std::string_view key) const;
  double GetReal(std::string_view key) const;
  const std::string& GetString(std::string_view key) const;
  std::vector<int64_t> GetIntList(std::string_view key) const;
  std::vector<double> GetRealList(std::string_view key) const;
  std::vector<std::string> GetStringList(std::string_view key) const;
  std::map<std::string, double> GetRealMap(std::string_view key) const;

  // Range helpers; throw ValidationError at the key path.
  int64_t GetIntAtLeast(std::string_view key, int64_t min) const;
  double GetRealInRange(std::string_view key, double lo, double hi) const;

 private:
  const ConfigNode& Require(std::string_view key) const;

  std::string path_;
  ConfigNode values_ = ConfigNode::EmptyMapping();
};

class ComponentRegistry;

inline constexpr uint64_t kDefaultSeed = 20;

// A validated session configuration: one subtree per ComponentKind plus an
// optional integer `seed`.
class Config {
 public:
  // Validates against `registry` (fail-closed on unknown keys).
  static Config FromNode(ConfigNode root, const ComponentRegistry& registry);

  const ConfigNode& root() const { return root_; }
  uint64_t seed() const;
  const ConfigNode& Subtree(ComponentKind kind) const;
  std::string ComponentType(ComponentKind kind) const;
  ComponentParams Params(ComponentKind kind,
                         const ComponentRegistry& registry) const;

  // Returns a revalidated copy with `kind.key` replaced.
  Config WithValue(ComponentKind kind, std::string_view key, ConfigNode value,
                   const ComponentRegistry& registry) const;

  std::string ToText() const { return EmitConfigText(root_); }

 private:
  explicit Config(ConfigNode root) : root_(std::move(root)) {}
  ConfigNode root_;
};

Config ParseConfig(std::string_view text, const ComponentRegistry& registry);
Config LoadConfig(const std::string& path, const ComponentRegistry& registry);
// Uses the global registry.
Config LoadConfig(const std::string& path);

}  // namespace nasforge

#endif  // NASFORGE_CORE_CONFIG_H_
