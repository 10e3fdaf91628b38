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

#include "nasforge/search_space/blockwise_space.h"

#include <algorithm>
#include <set>

#include "nasforge/common/error.h"

namespace nasforge {
namespace {

std::vector<int> BlockwiseCardinalities(const BlockwiseSpaceOptions& o) {
  if (o.stage_channels.empty()) throw ConfigError("blockwise: no stages");
  if (o.stage_channels.size() != o.stage_strides.size()) {
    throw ConfigError("blockwise: stage_channels and stage_strides differ in length");
  }
  if (o.depth_choices.empty() || o.expansion_choices.empty() ||
      o.kernel_choices.empty()) {
    throw ConfigError("blockwise: empty choice list");
  }
  for (int d : o.depth_choices) {
    if (d < 1) throw ConfigError("blockwise: depth choices must be >= 1");
  }
  for (const auto* list : {&o.expansion_choices, &o.kernel_choices,
                           &o.stage_channels, &o.stage_strides}) {
    for (int v : *list) {
      if (v < 1) throw ConfigError("blockwise: choices and shapes must be >= 1");
    }
  }
  if (o.stem_channels < 1 || o.resolution < 1) {
    throw ConfigError("blockwise: stem_channels and resolution must be >= 1");
  }
  const int max_depth = *std::max_element(o.depth_choices.begin(),
                                          o.depth_choices.end());
  std::vector<int> out;
  for (size_t s = 0; s < o.stage_channels.size(); ++s) {
    out.push_back(static_cast<int>(o.depth_choices.size()));
    for (int b = 0; b < max_depth; ++b) {
      out.push_back(static_cast<int>(o.expansion_choices.size()));
      out.push_back(static_cast<int>(o.kernel_choices.size()));
    }
  }
  return out;
}

}  // namespace

BlockwiseSpace::BlockwiseSpace(BlockwiseSpaceOptions options)
    : SearchSpace(BlockwiseCardinalities(options)),
      options_(std::move(options)),
      max_depth_(*std::max_element(options_.depth_choices.begin(),
                                   options_.depth_choices.end())) {
  Shape3 shape{options_.stem_channels, options_.resolution, options_.resolution};
  for (int s = 0; s < num_stages(); ++s) {
    stage_inputs_.push_back(shape);
    const int stride = options_.stage_strides[s];
    shape = {options_.stage_channels[s], StridedSize(shape.h, stride),
             StridedSize(shape.w, stride)};
  }
}

int BlockwiseSpace::StageDepth(const Genotype& genotype, int stage) const {
  return options_.depth_choices.at(genotype.at(stage * decisions_per_stage()));
}

PrimitiveKey BlockwiseSpace::BlockKey(int stage, int index, int expansion,
                                      int kernel) const {
  PrimitiveKey key;
  const int channels = options_.stage_channels[stage];
  if (index == 0) {
    key.in = stage_inputs_[stage];
    key.stride = options_.stage_strides[stage];
  } else {
    const Shape3 first = stage_inputs_[stage];
    const int stride = options_.stage_strides[stage];
    key.in = {channels, StridedSize(first.h, stride), StridedSize(first.w, stride)};
    key.stride = 1;
  }
  key.out_channels = channels;
  key.expansion = expansion;
  key.kernel = kernel;
  return key;
}

std::vector<PrimitiveKey> BlockwiseSpace::ActiveBlocks(
    const Genotype& genotype) const {
  Validate(genotype);
  std::vector<PrimitiveKey> out;
  for (int s = 0; s < num_stages(); ++s) {
    const int base = s * decisions_per_stage();
    const int depth = StageDepth(genotype, s);
    for (int b = 0; b < depth; ++b) {
      out.push_back(BlockKey(s, b,
                             options_.expansion_choices[genotype[base + 1 + 2 * b]],
                             options_.kernel_choices[genotype[base + 2 + 2 * b]]));
    }
  }
  return out;
}

std::vector<PrimitiveKey> BlockwiseSpace::ReachablePrimitives() const {
  std::set<PrimitiveKey> keys;
  for (int s = 0; s < num_stages(); ++s) {
    for (int b = 0; b < max_depth_; ++b) {
      for (int e : options_.expansion_choices) {
        for (int k : options_.kernel_choices) keys.insert(BlockKey(s, b, e, k));
      }
    }
  }
  return {keys.begin(), keys.end()};
}

std::vector<BlockFeature> BlockwiseSpace::BlockFeatures(
    const Genotype& genotype, const ProfilingTable& table) const {
  std::vector<BlockFeature> out;
  for (const PrimitiveKey& key : ActiveBlocks(genotype)) {
    BlockFeature f;
    f.cost = table.Cost(key);
    f.in_shape = key.in;
    f.out_shape = key.OutShape();
    f.kernel = key.kernel;
    f.stride = key.stride;
    out.push_back(f);
  }
  return out;
}

Genotype BlockwiseSpace::Canonicalize(const Genotype& genotype) const {
  Validate(genotype);
  Genotype out = genotype;
  for (int s = 0; s < num_stages(); ++s) {
    const int base = s * decisions_per_stage();
    const int depth = StageDepth(genotype, s);
    for (int b = depth; b < max_depth_; ++b) {
      out[base + 1 + 2 * b] = 0;
      out[base + 2 + 2 * b] = 0;
    }
  }
  return out;
}

BigCount BlockwiseSpace::SpaceSize() const {
  const auto per_block = static_cast<BigCount>(options_.expansion_choices.size() *
                                               options_.kernel_choices.size());
  BigCount per_stage = 0;
  for (int d : options_.depth_choices) {
    BigCount programs = 1;
    for (int b = 0; b < d; ++b) programs *= per_block;
    per_stage += programs;
  }
  BigCount total = 1;
  for (int s = 0; s < num_stages(); ++s) total *= per_stage;
  return total;
}

void BlockwiseSpace::ForEachGenotype(
    const std::function<void(const Genotype&)>& visit) const {
  Genotype g(decision_count(), 0);
  const int num_e = static_cast<int>(options_.expansion_choices.size());
  const int num_k = static_cast<int>(options_.kernel_choices.size());
  // Recurse over (stage, block); inactive blocks stay at 0.
  std::function<void(int, int)> recurse = [&](int stage, int block) {
    if (stage == num_stages()) {
      visit(g);
      return;
    }
    const int base = stage * decisions_per_stage();
    if (block < 0) {
      for (int d = 0; d < static_cast<int>(options_.depth_choices.size()); ++d) {
        g[base] = d;
        recurse(stage, 0);
      }
      g[base] = 0;
      return;
    }
    if (block == StageDepth(g, stage)) {
      recurse(stage + 1, -1);
      return;
    }
    for (int e = 0; e < num_e; ++e) {
      for (int k = 0; k < num_k; ++k) {
        g[base + 1 + 2 * block] = e;
        g[base + 2 + 2 * block] = k;
        recurse(stage, block + 1);
      }
    }
    g[base + 1 + 2 * block] = 0;
    g[base + 2 + 2 * block] = 0;
  };
  recurse(0, -1);
}

std::string BlockwiseSpace::ToString(const Genotype& genotype) const {
  Validate(genotype);
  std::string out;
  for (int s = 0; s < num_stages(); ++s) {
    const int base = s * decisions_per_stage();
    const int depth = StageDepth(genotype, s);
    if (s > 0) out += ";";
    out += "stage" + std::to_string(s + 1) + ":d" + std::to_string(depth) + "[";
    for (int b = 0; b < depth; ++b) {
      if (b > 0) out += ",";
      out += "e" +
             std::to_string(options_.expansion_choices[genotype[base + 1 + 2 * b]]) +
             "k" + std::to_string(options_.kernel_choices[genotype[base + 2 + 2 * b]]);
    }
    out += "]";
  }
  return out;
}

int BlockwiseSpace::IndexOf(const std::vector<int>& choices, int value) const {
  auto it = std::find(choices.begin(), choices.end(), value);
  return it == choices.end() ? -1 : static_cast<int>(it - choices.begin());
}

Genotype BlockwiseSpace::Parse(std::string_view text) const {
  GenotypeScanner scan(text);
  Genotype g(decision_count(), 0);
  for (int s = 0; s < num_stages(); ++s) {
    const int base = s * decisions_per_stage();
    if (s > 0) scan.Expect(";");
    scan.Expect("stage");
    const std::string stage_token = scan.CurrentToken();
    if (scan.ReadInt("stage index") != s + 1) {
      scan.FailToken(stage_token, "expected stage" + std::to_string(s + 1));
    }
    scan.Expect(":d");
    const std::string depth_token = scan.CurrentToken();
    const int depth = scan.ReadInt("depth");
    const int depth_index = IndexOf(options_.depth_choices, depth);
    if (depth_index < 0) {
      scan.FailToken(depth_token, "invalid depth for stage" + std::to_string(s + 1));
    }
    g[base] = depth_index;
    scan.Expect("[");
    for (int b = 0; b < depth; ++b) {
      if (b > 0) scan.Expect(",");
      scan.Expect("e");
      const std::string e_token = scan.CurrentToken();
      const int e = IndexOf(options_.expansion_choices, scan.ReadInt("expansion"));
      if (e < 0) scan.FailToken(e_token, "invalid expansion ratio");
      // The kernel follows the expansion digits directly ("e4k5").
      scan.Expect("k");
      const std::string k_token = scan.CurrentToken();
      const int k = IndexOf(options_.kernel_choices, scan.ReadInt("kernel"));
      if (k < 0) scan.FailToken(k_token, "invalid kernel size");
      g[base + 1 + 2 * b] = e;
      g[base + 2 + 2 * b] = k;
    }
    if (scan.Peek(",")) {
      scan.Fail("stage" + std::to_string(s + 1) + " lists more than " +
                std::to_string(depth) + " blocks");
    }
    scan.Expect("]");
  }
  scan.ExpectEnd();
  return g;
}

}  // namespace nasforge
