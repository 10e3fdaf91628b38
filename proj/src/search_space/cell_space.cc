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

#include "nasforge/search_space/cell_space.h"

#include <algorithm>
#include <cctype>

#include "nasforge/common/error.h"

namespace nasforge {
namespace {

std::vector<int> CellCardinalities(int num_nodes, int num_ops) {
  if (num_nodes < 1) throw ConfigError("cell space needs >= 1 intermediate node");
  if (num_ops < 1) throw ConfigError("cell space needs >= 1 op");
  std::vector<int> out;
  for (int node = 2; node < num_nodes + 2; ++node) {
    for (int edge = 0; edge < 2; ++edge) {
      out.push_back(node);
      out.push_back(num_ops);
    }
  }
  return out;
}

}  // namespace

CellSpace::CellSpace(int num_intermediate_nodes, std::vector<std::string> ops)
    : SearchSpace(CellCardinalities(num_intermediate_nodes,
                                    static_cast<int>(ops.size()))),
      num_nodes_(num_intermediate_nodes),
      ops_(std::move(ops)) {
  for (const auto& op : ops_) {
    const bool ident =
        !op.empty() && !std::isdigit(static_cast<unsigned char>(op[0])) &&
        std::all_of(op.begin(), op.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        });
    if (!ident) throw ConfigError("cell op name must be an identifier: '" + op + "'");
  }
  for (size_t i = 0; i < ops_.size(); ++i) {
    for (size_t j = i + 1; j < ops_.size(); ++j) {
      if (ops_[i] == ops_[j]) throw ConfigError("duplicate cell op: " + ops_[i]);
    }
  }
}

BigCount CellSpace::SpaceSize() const {
  BigCount n = 1;
  const auto ops = static_cast<BigCount>(ops_.size());
  for (int node = 2; node < num_nodes_ + 2; ++node) {
    const BigCount per_edge = static_cast<BigCount>(node) * ops;
    n *= per_edge * per_edge;
  }
  return n;
}

std::string CellSpace::ToString(const Genotype& genotype) const {
  Validate(genotype);
  std::string out = "cell(";
  for (int n = 0; n < num_nodes_; ++n) {
    if (n > 0) out += ";";
    out += "n" + std::to_string(n + 2) + ":[";
    for (int e = 0; e < 2; ++e) {
      const size_t base = 4 * n + 2 * e;
      if (e > 0) out += ",";
      out += std::to_string(genotype[base]) + "-" + ops_[genotype[base + 1]];
    }
    out += "]";
  }
  return out + ")";
}

Genotype CellSpace::Parse(std::string_view text) const {
  GenotypeScanner scan(text);
  scan.Expect("cell(");
  Genotype g;
  for (int n = 0; n < num_nodes_; ++n) {
    const int node = n + 2;
    if (n > 0) scan.Expect(";");
    scan.Expect("n");
    const std::string node_token = scan.CurrentToken();
    if (scan.ReadInt("node index") != node) {
      scan.FailToken(node_token, "expected node n" + std::to_string(node));
    }
    scan.Expect(":[");
    for (int e = 0; e < 2; ++e) {
      if (e > 0) scan.Expect(",");
      const std::string pred_token = scan.CurrentToken();
      const int pred = scan.ReadInt("predecessor");
      if (pred < 0 || pred >= node) {
        scan.FailToken(pred_token, "predecessor of node n" +
                                       std::to_string(node) +
                                       " must be in [0, " +
                                       std::to_string(node) + ")");
      }
      scan.Expect("-");
      const std::string op_token = scan.CurrentToken();
      const std::string op = scan.ReadIdent("op");
      auto it = std::find(ops_.begin(), ops_.end(), op);
      if (it == ops_.end()) scan.FailToken(op_token, "unknown op");
      g.push_back(pred);
      g.push_back(static_cast<int>(it - ops_.begin()));
    }
    scan.Expect("]");
  }
  scan.Expect(")");
  scan.ExpectEnd();
  return g;
}

}  // namespace nasforge
