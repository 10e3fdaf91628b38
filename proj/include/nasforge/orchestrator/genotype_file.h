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

#ifndef NASFORGE_ORCHESTRATOR_GENOTYPE_FILE_H_
#define NASFORGE_ORCHESTRATOR_GENOTYPE_FILE_H_

#include <string>
#include <string_view>
#include <vector>

namespace nasforge {

// One entry of an `archs:` list: either a plain string or a mapping with
// `genotype` and optional `note`.
struct GenotypeEntry {
  int line = 0;
  std::string genotype;
  std::string note;
  // Set when the entry itself is malformed.
  std::string error;
};

// Throws ConfigParseError (with line) when the text is not valid YAML or
// has no `archs` sequence.
std::vector<GenotypeEntry> ParseGenotypeFile(std::string_view text);
std::vector<GenotypeEntry> ReadGenotypeFile(const std::string& path);

std::string EmitGenotypeFile(const std::vector<GenotypeEntry>& entries);
void WriteGenotypeFile(const std::string& path,
                       const std::vector<GenotypeEntry>& entries);

}  // namespace nasforge

#endif  // NASFORGE_ORCHESTRATOR_GENOTYPE_FILE_H_
