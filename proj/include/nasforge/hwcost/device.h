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

#ifndef NASFORGE_HWCOST_DEVICE_H_
#define NASFORGE_HWCOST_DEVICE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nasforge/hwcost/profiling.h"

namespace nasforge {

class BlockwiseSpace;

enum class DeviceKind { kGpuLike, kFpgaLike };

std::string_view DeviceKindName(DeviceKind kind);
std::optional<DeviceKind> ParseDeviceKind(std::string_view name);

struct DeviceOptions {
  DeviceKind kind = DeviceKind::kGpuLike;
  // gpu_like: (c0, c1, c2, c3); fpga_like: (c0, c1, c2). Empty = defaults.
  std::vector<double> coefficients;
  // Standard deviation of the multiplicative Gaussian network noise.
  double noise_sigma = 0.01;
  // Half-width of the per-primitive multiplicative jitter.
  double jitter = 0.10;
  uint64_t seed = 0;
};

// Deterministic stand-in for a profiled device.
//
// Primitive cost is proportional to the MAC count of the inverted
// bottleneck (1x1 expand, kxk depthwise, 1x1 project) plus a fixed
// launch overhead, scaled to O(1) ms or mJ and jittered per key.
//
// Whole-network cost with S = sum of block costs l_i and n blocks:
//   gpu_like  (latency_ms): c0 + c1 S + c2 sqrt(sum l_i^2) + c3 n
//   fpga_like (energy_mj):  c0 + c1 S + c2 S^0.85
// times (1 + noise_sigma z), z ~ N(0,1) drawn from a hash of the seed and
// the block list.
class DeviceSimulator {
 public:
  explicit DeviceSimulator(DeviceOptions options);

  static constexpr double kGpuDefaults[4] = {0.5, 0.7, 0.4, 0.02};
  static constexpr double kFpgaDefaults[3] = {1.0, 0.6, 0.8};
  static constexpr double kFpgaExponent = 0.85;

  DeviceKind kind() const { return options_.kind; }
  std::string name() const { return std::string(DeviceKindName(options_.kind)); }
  // latency_ms or energy_mj.
  std::string metric() const;
  const std::vector<double>& coefficients() const { return coefficients_; }
  const DeviceOptions& options() const { return options_; }

  double PrimitiveCost(const PrimitiveKey& key) const;
  // Throws Error for an empty block list.
  double NetworkCost(std::span<const BlockFeature> blocks) const;
  double NoiselessNetworkCost(std::span<const BlockFeature> blocks) const;

 private:
  DeviceOptions options_;
  std::vector<double> coefficients_;
};

// Multiply-accumulate count of one inverted-bottleneck block.
double InvertedBottleneckMacs(const PrimitiveKey& key);

// Profiles every reachable primitive of `space` on `device`.
ProfilingTable ProfilePrimitives(const BlockwiseSpace& space,
                                 const DeviceSimulator& device);

}  // namespace nasforge

#endif  // NASFORGE_HWCOST_DEVICE_H_
