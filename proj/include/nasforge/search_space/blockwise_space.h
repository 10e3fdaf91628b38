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

#ifndef NASFORGE_SEARCH_SPACE_BLOCKWISE_SPACE_H_
#define NASFORGE_SEARCH_SPACE_BLOCKWISE_SPACE_H_

#include <string>
#include <vector>

#include "nasforge/hwcost/profiling.h"
#include "nasforge/search_space/search_space.h"

namespace nasforge {

struct BlockwiseSpaceOptions {
  std::vector<int> depth_choices = {2, 3, 4};
  std::vector<int> expansion_choices = {3, 4, 6};
  std::vector<int> kernel_choices = {3, 5, 7};
  std::vector<int> stage_channels = {16, 24, 40, 80, 160};
  std::vector<int> stage_strides = {2, 2, 2, 1, 2};
  int stem_channels = 16;
  int resolution = 32;
};

// MobileNet-V2 style stages of inverted-bottleneck blocks. Per stage the
// genotype holds a depth decision followed by max_depth (expansion, kernel)
// pairs; pairs past the chosen depth are inactive and canonicalize to 0.
// The first block of a stage carries the stage stride.
//
// Text form: "stage1:d3[e4k5,e3k3,e6k7];stage2:d2[e3k3,e6k5];...".
class BlockwiseSpace : public SearchSpace {
 public:
  explicit BlockwiseSpace(BlockwiseSpaceOptions options = {});

  std::string type_name() const override { return "blockwise"; }
  const BlockwiseSpaceOptions& options() const { return options_; }
  int num_stages() const {
    return static_cast<int>(options_.stage_channels.size());
  }
  int max_depth() const { return max_depth_; }
  int decisions_per_stage() const { return 1 + 2 * max_depth_; }

  int StageDepth(const Genotype& genotype, int stage) const;
  // Active blocks in execution order.
  std::vector<PrimitiveKey> ActiveBlocks(const Genotype& genotype) const;
  // Every primitive some genotype can activate, deduplicated and sorted.
  std::vector<PrimitiveKey> ReachablePrimitives() const;
  // One feature per active block, costs read from `table`. Throws
  // MissingEntryError naming the first uncovered key.
  std::vector<BlockFeature> BlockFeatures(const Genotype& genotype,
                                          const ProfilingTable& table) const;

  Genotype Canonicalize(const Genotype& genotype) const override;
  BigCount SpaceSize() const override;
  void ForEachGenotype(
      const std::function<void(const Genotype&)>& visit) const override;
  std::string ToString(const Genotype& genotype) const override;
  Genotype Parse(std::string_view text) const override;

 private:
  // Key of block `index` in `stage` for the given choice indices.
  PrimitiveKey BlockKey(int stage, int index, int expansion, int kernel) const;
  int IndexOf(const std::vector<int>& choices, int value) const;

  BlockwiseSpaceOptions options_;
  int max_depth_;
  std::vector<Shape3> stage_inputs_;
};

}  // namespace nasforge

#endif  // NASFORGE_SEARCH_SPACE_BLOCKWISE_SPACE_H_
