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

#include "nasforge/core/config.h"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include "nasforge/common/error.h"
#include "nasforge/core/registry.h"

namespace nasforge {
namespace {

bool IsIntText(const std::string& s) {
  static const std::regex kInt("[-+]?[0-9]+");
  return std::regex_match(s, kInt);
}

bool IsRealText(const std::string& s) {
  static const std::regex kReal(
      "[-+]?(\\.[0-9]+|[0-9]+(\\.[0-9]*)?)([eE][-+]?[0-9]+)?");
  return std::regex_match(s, kReal);
}

ConfigNode ScalarFromPlain(const std::string& text, int line) {
  if (text == "true" || text == "True") return ConfigNode(true);
  if (text == "false" || text == "False") return ConfigNode(false);
  if (text.empty() || text == "~" || text == "null") return ConfigNode();
  if (IsIntText(text)) {
    int64_t v = 0;
    const char* begin = text.data() + (text[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ConfigParseError("integer out of range: " + text, line);
    }
    return ConfigNode(v);
  }
  if (IsRealText(text)) return ConfigNode(std::stod(text));
  if (text == ".inf" || text == "+.inf") {
    return ConfigNode(std::numeric_limits<double>::infinity());
  }
  if (text == "-.inf") return ConfigNode(-std::numeric_limits<double>::infinity());
  if (text == ".nan") return ConfigNode(std::numeric_limits<double>::quiet_NaN());
  return ConfigNode(text);
}

ConfigNode FromYaml(const YAML::Node& node) {
  const int line = node.Mark().line + 1;
  switch (node.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null:
      return ConfigNode();
    case YAML::NodeType::Scalar:
      if (node.Tag() == "!") return ConfigNode(node.Scalar());
      if (!node.Tag().empty() && node.Tag() != "?") {
        throw ConfigParseError("tags are not supported: " + node.Tag(), line);
      }
      return ScalarFromPlain(node.Scalar(), line);
    case YAML::NodeType::Sequence: {
      ConfigNode::Sequence seq;
      for (const auto& item : node) seq.push_back(FromYaml(item));
      return ConfigNode(std::move(seq));
    }
    case YAML::NodeType::Map: {
      ConfigNode out = ConfigNode::EmptyMapping();
      for (const auto& kv : node) {
        if (!kv.first.IsScalar()) {
          throw ConfigParseError("mapping keys must be scalars",
                                 kv.first.Mark().line + 1);
        }
        const std::string key = kv.first.Scalar();
        if (out.Has(key)) {
          throw ConfigParseError("duplicate key '" + key + "'",
                                 kv.first.Mark().line + 1);
        }
        out.AsMapping().emplace_back(key, FromYaml(kv.second));
      }
      return out;
    }
  }
  return ConfigNode();
}

std::string QuoteString(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

std::string FormatReal(double v) {
  if (std::isnan(v)) return ".nan";
  if (std::isinf(v)) return v > 0 ? ".inf" : "-.inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string FormatKey(const std::string& key) {
  static const std::regex kPlainKey("[A-Za-z_][A-Za-z0-9_.-]*");
  if (std::regex_match(key, kPlainKey) && key != "true" && key != "false" &&
      key != "null") {
    return key;
  }
  return QuoteString(key);
}

std::string FormatScalar(const ConfigNode& node) {
  switch (node.type()) {
    case ConfigNode::Type::kNull:
      return "null";
    case ConfigNode::Type::kBool:
      return node.AsBool() ? "true" : "false";
    case ConfigNode::Type::kInt:
      return std::to_string(node.AsInt());
    case ConfigNode::Type::kReal:
      return FormatReal(node.AsReal());
    case ConfigNode::Type::kString:
      return QuoteString(node.AsString());
    default:
      return "";
  }
}

bool IsFlat(const ConfigNode& node) {
  if (node.IsScalar()) return true;
  if (node.IsSequence()) {
    for (const auto& item : node.AsSequence()) {
      if (!item.IsScalar()) return false;
    }
    return true;
  }
  return node.AsMapping().empty();
}

std::string FormatFlat(const ConfigNode& node) {
  if (node.IsScalar()) return FormatScalar(node);
  if (node.IsMapping()) return "{}";
  std::string out = "[";
  bool first = true;
  for (const auto& item : node.AsSequence()) {
    if (!first) out += ", ";
    out += FormatScalar(item);
    first = false;
  }
  return out + "]";
}

using CommentFn = std::function<std::string(const std::string&)>;

void EmitNode(const ConfigNode& node, int indent, const std::string& path,
              const CommentFn& comment, std::ostringstream& out);

std::string Trailer(const CommentFn& comment, const std::string& path) {
  if (!comment) return "";
  std::string text = comment(path);
  return text.empty() ? "" : "  # " + text;
}

void EmitMapping(const ConfigNode& node, int indent, const std::string& path,
                 const CommentFn& comment, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : node.AsMapping()) {
    const std::string child = path.empty() ? key : path + "." + key;
    out << pad << FormatKey(key) << ":";
    if (IsFlat(value)) {
      out << " " << FormatFlat(value) << Trailer(comment, child) << "\n";
    } else {
      out << Trailer(comment, child) << "\n";
      EmitNode(value, indent + 2, child, comment, out);
    }
  }
}

void EmitNode(const ConfigNode& node, int indent, const std::string& path,
              const CommentFn& comment, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  if (node.IsMapping()) {
    EmitMapping(node, indent, path, comment, out);
    return;
  }
  if (node.IsSequence()) {
    for (const auto& item : node.AsSequence()) {
      if (IsFlat(item)) {
        out << pad << "- " << FormatFlat(item) << "\n";
      } else {
        // Nested block under a dash: render, then splice the dash in.
        std::ostringstream inner;
        EmitNode(item, indent + 2, path, comment, inner);
        std::string text = inner.str();
        text.replace(indent, 2, "- ");
        out << text;
      }
    }
    return;
  }
  out << pad << FormatScalar(node) << "\n";
}

std::string ParamTypeName(ParamType type) {
  switch (type) {
    case ParamType::kBool:
      return "bool";
    case ParamType::kInt:
      return "int";
    case ParamType::kReal:
      return "real";
    case ParamType::kString:
      return "string";
    case ParamType::kIntList:
      return "list of int";
    case ParamType::kRealList:
      return "list of real";
    case ParamType::kStringList:
      return "list of string";
    case ParamType::kRealMap:
      return "mapping of real";
  }
  return "?";
}

bool IsNumber(const ConfigNode& n) {
  return n.type() == ConfigNode::Type::kInt ||
         n.type() == ConfigNode::Type::kReal;
}

}  // namespace

bool ConfigNode::IsScalar() const {
  const Type t = type();
  return t != Type::kSequence && t != Type::kMapping;
}

bool ConfigNode::AsBool() const {
  if (auto* v = std::get_if<bool>(&value_)) return *v;
  throw ConfigError("config value is not a bool");
}

int64_t ConfigNode::AsInt() const {
  if (auto* v = std::get_if<int64_t>(&value_)) return *v;
  throw ConfigError("config value is not an int");
}

double ConfigNode::AsReal() const {
  if (auto* v = std::get_if<double>(&value_)) return *v;
  if (auto* v = std::get_if<int64_t>(&value_)) return static_cast<double>(*v);
  throw ConfigError("config value is not a real");
}

const std::string& ConfigNode::AsString() const {
  if (auto* v = std::get_if<std::string>(&value_)) return *v;
  throw ConfigError("config value is not a string");
}

const ConfigNode::Sequence& ConfigNode::AsSequence() const {
  if (auto* v = std::get_if<Sequence>(&value_)) return *v;
  throw ConfigError("config value is not a sequence");
}

ConfigNode::Sequence& ConfigNode::AsSequence() {
  if (auto* v = std::get_if<Sequence>(&value_)) return *v;
  throw ConfigError("config value is not a sequence");
}

const ConfigNode::Mapping& ConfigNode::AsMapping() const {
  if (auto* v = std::get_if<Mapping>(&value_)) return *v;
  throw ConfigError("config value is not a mapping");
}

ConfigNode::Mapping& ConfigNode::AsMapping() {
  if (auto* v = std::get_if<Mapping>(&value_)) return *v;
  throw ConfigError("config value is not a mapping");
}

const ConfigNode* ConfigNode::Find(std::string_view key) const {
  auto* map = std::get_if<Mapping>(&value_);
  if (map == nullptr) return nullptr;
  for (const auto& [k, v] : *map) {
    if (k == key) return &v;
  }
  return nullptr;
}

ConfigNode* ConfigNode::Find(std::string_view key) {
  auto* map = std::get_if<Mapping>(&value_);
  if (map == nullptr) return nullptr;
  for (auto& [k, v] : *map) {
    if (k == key) return &v;
  }
  return nullptr;
}

void ConfigNode::Set(std::string_view key, ConfigNode value) {
  if (ConfigNode* existing = Find(key)) {
    *existing = std::move(value);
    return;
  }
  AsMapping().emplace_back(std::string(key), std::move(value));
}

std::string_view ConfigTypeName(ConfigNode::Type type) {
  switch (type) {
    case ConfigNode::Type::kNull:
      return "null";
    case ConfigNode::Type::kBool:
      return "bool";
    case ConfigNode::Type::kInt:
      return "int";
    case ConfigNode::Type::kReal:
      return "real";
    case ConfigNode::Type::kString:
      return "string";
    case ConfigNode::Type::kSequence:
      return "sequence";
    case ConfigNode::Type::kMapping:
      return "mapping";
  }
  return "?";
}

ConfigNode ParseConfigText(std::string_view text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigParseError(e.msg, e.mark.line + 1);
  }
  return FromYaml(doc);
}

ConfigNode ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str());
}

std::string EmitConfigText(const ConfigNode& root, const CommentFn& comment) {
  std::ostringstream out;
  if (root.IsMapping() && root.AsMapping().empty()) return "{}\n";
  if (root.IsSequence() && root.AsSequence().empty()) return "[]\n";
  EmitNode(root, 0, "", comment, out);
  return out.str();
}

const ParamSpec* ComponentSchema::Find(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void CheckParamType(const ConfigNode& value, ParamType type,
                    const std::string& key_path) {
  auto fail = [&](const std::string& got) {
    throw ValidationError(key_path,
                          "expected " + ParamTypeName(type) + ", got " + got);
  };
  const std::string got(ConfigTypeName(value.type()));
  switch (type) {
    case ParamType::kBool:
      if (value.type() != ConfigNode::Type::kBool) fail(got);
      return;
    case ParamType::kInt:
      if (value.type() != ConfigNode::Type::kInt) fail(got);
      return;
    case ParamType::kReal:
      if (!IsNumber(value)) fail(got);
      return;
    case ParamType::kString:
      if (value.type() != ConfigNode::Type::kString) fail(got);
      return;
    case ParamType::kIntList:
    case ParamType::kRealList:
    case ParamType::kStringList: {
      if (!value.IsSequence()) fail(got);
      const auto& seq = value.AsSequence();
      for (size_t i = 0; i < seq.size(); ++i) {
        const auto& item = seq[i];
        const bool ok =
            (type == ParamType::kIntList &&
             item.type() == ConfigNode::Type::kInt) ||
            (type == ParamType::kRealList && IsNumber(item)) ||
            (type == ParamType::kStringList &&
             item.type() == ConfigNode::Type::kString);
        if (!ok) {
          throw ValidationError(key_path + "[" + std::to_string(i) + "]",
                                "expected element of " + ParamTypeName(type) +
                                    ", got " +
                                    std::string(ConfigTypeName(item.type())));
        }
      }
      return;
    }
    case ParamType::kRealMap: {
      if (!value.IsMapping()) fail(got);
      for (const auto& [k, v] : value.AsMapping()) {
        if (!IsNumber(v)) {
          throw ValidationError(key_path + "." + k,
                                "expected real, got " +
                                    std::string(ConfigTypeName(v.type())));
        }
      }
      return;
    }
  }
}

ComponentParams ComponentParams::FromSubtree(const std::string& path,
                                             const ConfigNode& subtree,
                                             const ComponentSchema& schema) {
  if (!subtree.IsMapping()) {
    throw ValidationError(path, "expected a mapping");
  }
  ConfigNode values = ConfigNode::EmptyMapping();
  for (const auto& [key, value] : subtree.AsMapping()) {
    if (key == "type") continue;
    const ParamSpec* spec = schema.Find(key);
    if (spec == nullptr) {
      std::string known;
      for (const auto& p : schema.params) known += (known.empty() ? "" : ", ") + p.name;
      throw ValidationError(path + "." + key,
                            "unknown key (accepted: " +
                                (known.empty() ? std::string("none") : known) +
                                ")");
    }
    CheckParamType(value, spec->type, path + "." + key);
  }
  for (const auto& spec : schema.params) {
    const ConfigNode* given = subtree.Find(spec.name);
    values.Set(spec.name, given != nullptr ? *given : spec.default_value);
  }
  return ComponentParams(path, std::move(values));
}

std::string ComponentParams::KeyPath(std::string_view key) const {
  return path_ + "." + std::string(key);
}

const ConfigNode& ComponentParams::Require(std::string_view key) const {
  const ConfigNode* node = values_.Find(key);
  if (node == nullptr) throw ValidationError(KeyPath(key), "missing parameter");
  return *node;
}

bool ComponentParams::GetBool(std::string_view key) const {
  return Require(key).AsBool();
}

int64_t ComponentParams::GetInt(std::string_view key) const {
  return Require(key).AsInt();
}

double ComponentParams::GetReal(std::string_view key) const {
  return Require(key).AsReal();
}

const std::string& ComponentParams::GetString(std::string_view key) const {
  return Require(key).AsString();
}

std::vector<int64_t> ComponentParams::GetIntList(std::string_view key) const {
  std::vector<int64_t> out;
  for (const auto& item : Require(key).AsSequence()) out.push_back(item.AsInt());
  return out;
}

std::vector<double> ComponentParams::GetRealList(std::string_view key) const {
  std::vector<double> out;
  for (const auto& item : Require(key).AsSequence()) out.push_back(item.AsReal());
  return out;
}

std::vector<std::string> ComponentParams::GetStringList(
    std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& item : Require(key).AsSequence()) {
    out.push_back(item.AsString());
  }
  return out;
}

std::map<std::string, double> ComponentParams::GetRealMap(
    std::string_view key) const {
  std::map<std::string, double> out;
  for (const auto& [k, v] : Require(key).AsMapping()) out[k] = v.AsReal();
  return out;
}

int64_t ComponentParams::GetIntAtLeast(std::string_view key,
                                       int64_t min) const {
  const int64_t v = GetInt(key);
  if (v < min) {
    throw ValidationError(KeyPath(key), "must be >= " + std::to_string(min) +
                                            ", got " + std::to_string(v));
  }
  return v;
}

double ComponentParams::GetRealInRange(std::string_view key, double lo,
                                       double hi) const {
  const double v = GetReal(key);
  if (!(v >= lo && v <= hi)) {
    throw ValidationError(KeyPath(key), "must lie in [" + FormatReal(lo) +
                                            ", " + FormatReal(hi) + "], got " +
                                            FormatReal(v));
  }
  return v;
}

Config Config::FromNode(ConfigNode root, const ComponentRegistry& registry) {
  if (!root.IsMapping()) throw ValidationError("<root>", "expected a mapping");
  for (const auto& [key, value] : root.AsMapping()) {
    if (key == "seed") {
      if (value.type() != ConfigNode::Type::kInt || value.AsInt() < 0) {
        throw ValidationError("seed", "expected a non-negative int");
      }
      continue;
    }
    if (!ParseComponentKind(key)) {
      throw ValidationError(key, "unknown top-level key (expected a component "
                                 "kind or 'seed')");
    }
  }
  for (ComponentKind kind : kAllComponentKinds) {
    const std::string name(ComponentKindName(kind));
    const ConfigNode* subtree = root.Find(name);
    if (subtree == nullptr) {
      throw ValidationError(name, "missing component subtree '" + name + "'");
    }
    if (!subtree->IsMapping()) throw ValidationError(name, "expected a mapping");
    const ConfigNode* type = subtree->Find("type");
    if (type == nullptr || type->type() != ConfigNode::Type::kString) {
      throw ValidationError(name + ".type", "missing string 'type'");
    }
    const RegistryEntry& entry = registry.Lookup(kind, type->AsString());
    ComponentParams::FromSubtree(name, *subtree, entry.schema);
  }
  return Config(std::move(root));
}

uint64_t Config::seed() const {
  const ConfigNode* s = root_.Find("seed");
  return s == nullptr ? kDefaultSeed : static_cast<uint64_t>(s->AsInt());
}

const ConfigNode& Config::Subtree(ComponentKind kind) const {
  return *root_.Find(ComponentKindName(kind));
}

std::string Config::ComponentType(ComponentKind kind) const {
  return Subtree(kind).Find("type")->AsString();
}

ComponentParams Config::Params(ComponentKind kind,
                               const ComponentRegistry& registry) const {
  const RegistryEntry& entry = registry.Lookup(kind, ComponentType(kind));
  return ComponentParams::FromSubtree(std::string(ComponentKindName(kind)),
                                      Subtree(kind), entry.schema);
}

Config Config::WithValue(ComponentKind kind, std::string_view key,
                         ConfigNode value,
                         const ComponentRegistry& registry) const {
  ConfigNode root = root_;
  root.Find(ComponentKindName(kind))->Set(key, std::move(value));
  return FromNode(std::move(root), registry);
}

Config ParseConfig(std::string_view text, const ComponentRegistry& registry) {
  return Config::FromNode(ParseConfigText(text), registry);
}

Config LoadConfig(const std::string& path, const ComponentRegistry& registry) {
  return Config::FromNode(ReadConfigFile(path), registry);
}

Config LoadConfig(const std::string& path) {
  return LoadConfig(path, ComponentRegistry::Global());
}

}  // namespace nasforge
