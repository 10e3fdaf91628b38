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

#include "nasforge/orchestrator/genotype_file.h"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "nasforge/common/error.h"

namespace nasforge {
namespace {

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<GenotypeEntry> ParseGenotypeFile(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigParseError(e.msg, e.mark.line + 1);
  }
  if (!root.IsMap() || !root["archs"]) {
    throw ConfigParseError("genotype file needs a top-level 'archs' list", 1);
  }
  const YAML::Node archs = root["archs"];
  if (!archs.IsSequence()) {
    throw ConfigParseError("'archs' must be a sequence", archs.Mark().line + 1);
  }
  std::vector<GenotypeEntry> entries;
  for (const YAML::Node& item : archs) {
    GenotypeEntry entry;
    entry.line = item.Mark().line + 1;
    if (item.IsScalar()) {
      entry.genotype = item.Scalar();
    } else if (item.IsMap()) {
      for (const auto& kv : item) {
        const std::string key = kv.first.Scalar();
        if (key == "genotype" && kv.second.IsScalar()) {
          entry.genotype = kv.second.Scalar();
        } else if (key == "note" && kv.second.IsScalar()) {
          entry.note = kv.second.Scalar();
        } else {
          entry.error = "unexpected key '" + key + "'";
        }
      }
      if (entry.error.empty() && entry.genotype.empty()) {
        entry.error = "entry has no genotype";
      }
    } else {
      entry.error = "entry must be a string or a mapping";
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<GenotypeEntry> ReadGenotypeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open genotype file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGenotypeFile(buffer.str());
}

std::string EmitGenotypeFile(const std::vector<GenotypeEntry>& entries) {
  std::string out = "archs:\n";
  if (entries.empty()) return "archs: []\n";
  for (const auto& e : entries) {
    out += "  - genotype: " + Quote(e.genotype) + "\n";
    if (!e.note.empty()) out += "    note: " + Quote(e.note) + "\n";
  }
  return out;
}

void WriteGenotypeFile(const std::string& path,
                       const std::vector<GenotypeEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  out << EmitGenotypeFile(entries);
  if (!out) throw Error("cannot write genotype file " + path);
}

}  // namespace nasforge
