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

#ifndef NASFORGE_SEARCH_SPACE_CELL_SPACE_H_
#define NASFORGE_SEARCH_SPACE_CELL_SPACE_H_

#include <string>
#include <vector>

#include "nasforge/search_space/search_space.h"

namespace nasforge {

// Cell with two input nodes (0, 1) and N intermediate nodes (2..N+1).
// Node i picks two (predecessor, op) edges with predecessors in [0, i).
// Genotype layout per node: [pred0, op0, pred1, op1]. The two edges are
// ordered and may share a predecessor.
//
// Text form: "cell(n2:[0-skip,1-conv3];n3:[2-conv5,0-skip])".
class CellSpace : public SearchSpace {
 public:
  CellSpace(int num_intermediate_nodes, std::vector<std::string> ops);

  std::string type_name() const override { return "cell"; }
  int num_intermediate_nodes() const { return num_nodes_; }
  const std::vector<std::string>& ops() const { return ops_; }

  BigCount SpaceSize() const override;
  std::string ToString(const Genotype& genotype) const override;
  Genotype Parse(std::string_view text) const override;

 private:
  int num_nodes_;
  std::vector<std::string> ops_;
};

}  // namespace nasforge

#endif  // NASFORGE_SEARCH_SPACE_CELL_SPACE_H_
