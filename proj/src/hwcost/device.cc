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

#include "nasforge/hwcost/device.h"

#include <cmath>
#include <cstring>

#include "nasforge/common/error.h"
#include "nasforge/common/rng.h"
#include "nasforge/search_space/blockwise_space.h"

namespace nasforge {
namespace {

constexpr double kMacScale = 1e-6;
constexpr double kGpuOverheadMs = 0.05;
constexpr double kFpgaEnergyPerMac = 1.5e-6;
constexpr double kFpgaOverheadMj = 0.1;

uint64_t HashBlocks(std::span<const BlockFeature> blocks, uint64_t seed) {
  std::string bytes;
  for (const auto& b : blocks) {
    for (double v : b.Vector()) {
      char buf[sizeof(double)];
      std::memcpy(buf, &v, sizeof(double));
      bytes.append(buf, sizeof(double));
    }
  }
  return HashString(bytes, seed);
}

}  // namespace

std::string_view DeviceKindName(DeviceKind kind) {
  return kind == DeviceKind::kGpuLike ? "gpu_like" : "fpga_like";
}

std::optional<DeviceKind> ParseDeviceKind(std::string_view name) {
  if (name == "gpu_like") return DeviceKind::kGpuLike;
  if (name == "fpga_like") return DeviceKind::kFpgaLike;
  return std::nullopt;
}

DeviceSimulator::DeviceSimulator(DeviceOptions options)
    : options_(std::move(options)), coefficients_(options_.coefficients) {
  const size_t expected = options_.kind == DeviceKind::kGpuLike ? 4 : 3;
  if (coefficients_.empty()) {
    if (options_.kind == DeviceKind::kGpuLike) {
      coefficients_.assign(std::begin(kGpuDefaults), std::end(kGpuDefaults));
    } else {
      coefficients_.assign(std::begin(kFpgaDefaults), std::end(kFpgaDefaults));
    }
  }
  if (coefficients_.size() != expected) {
    throw ConfigError(name() + " expects " + std::to_string(expected) +
                      " coefficients");
  }
  if (options_.noise_sigma < 0 || options_.jitter < 0 || options_.jitter >= 1) {
    throw ConfigError(name() + ": noise_sigma must be >= 0 and jitter in [0, 1)");
  }
}

std::string DeviceSimulator::metric() const {
  return options_.kind == DeviceKind::kGpuLike ? kLatencyMetric : kEnergyMetric;
}

double InvertedBottleneckMacs(const PrimitiveKey& key) {
  const Shape3 out = key.OutShape();
  const double in_c = key.in.c;
  const double hidden = in_c * key.expansion;
  const double in_area = static_cast<double>(key.in.h) * key.in.w;
  const double out_area = static_cast<double>(out.h) * out.w;
  const double expand = key.expansion == 1 ? 0.0 : in_c * hidden * in_area;
  const double depthwise =
      hidden * static_cast<double>(key.kernel) * key.kernel * out_area;
  const double project = hidden * out.c * out_area;
  return expand + depthwise + project;
}

double DeviceSimulator::PrimitiveCost(const PrimitiveKey& key) const {
  const double macs = InvertedBottleneckMacs(key);
  double base = 0.0;
  if (options_.kind == DeviceKind::kGpuLike) {
    base = kGpuOverheadMs + macs * kMacScale;
  } else {
    base = kFpgaOverheadMj + macs * kFpgaEnergyPerMac;
  }
  const uint64_t h = HashString(key.ToString(), options_.seed ^ 0x5EEDULL);
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return base * (1.0 + options_.jitter * (2.0 * u - 1.0));
}

double DeviceSimulator::NoiselessNetworkCost(
    std::span<const BlockFeature> blocks) const {
  if (blocks.empty()) throw Error("network cost of an empty block list");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& b : blocks) {
    sum += b.cost;
    sum_sq += b.cost * b.cost;
  }
  const auto& c = coefficients_;
  if (options_.kind == DeviceKind::kGpuLike) {
    return c[0] + c[1] * sum + c[2] * std::sqrt(sum_sq) +
           c[3] * static_cast<double>(blocks.size());
  }
  return c[0] + c[1] * sum + c[2] * std::pow(sum, kFpgaExponent);
}

double DeviceSimulator::NetworkCost(std::span<const BlockFeature> blocks) const {
  const double clean = NoiselessNetworkCost(blocks);
  if (options_.noise_sigma == 0.0) return clean;
  Rng rng(HashBlocks(blocks, options_.seed));
  return clean * (1.0 + options_.noise_sigma * rng.Normal());
}

ProfilingTable ProfilePrimitives(const BlockwiseSpace& space,
                                 const DeviceSimulator& device) {
  ProfilingTable table(device.name(), device.metric());
  for (const PrimitiveKey& key : space.ReachablePrimitives()) {
    table.Insert(key, device.PrimitiveCost(key));
  }
  return table;
}

}  // namespace nasforge
