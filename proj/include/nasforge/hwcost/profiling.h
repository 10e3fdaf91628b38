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

#ifndef NASFORGE_HWCOST_PROFILING_H_
#define NASFORGE_HWCOST_PROFILING_H_

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nasforge {

struct Shape3 {
  int c = 0;
  int h = 0;
  int w = 0;
  auto operator<=>(const Shape3&) const = default;
};

// ceil(n / stride), the spatial size after a strided block.
int StridedSize(int n, int stride);

// One profiled primitive: an inverted-bottleneck block with fixed shapes.
struct PrimitiveKey {
  Shape3 in;
  int out_channels = 0;
  int kernel = 0;
  int stride = 1;
  int expansion = 1;

  Shape3 OutShape() const;
  // "ib_c16_h32_w32_o24_k3_s2_e6"; unique per field tuple.
  std::string ToString() const;
  // Throws GenotypeError on malformed keys.
  static PrimitiveKey Parse(std::string_view text);

  auto operator<=>(const PrimitiveKey&) const = default;
};

// Per-block input of the cost models.
struct BlockFeature {
  double cost = 0.0;
  Shape3 in_shape;
  Shape3 out_shape;
  int kernel = 0;
  int stride = 1;

  static constexpr size_t kWidth = 9;
  // (cost, inC, inH, inW, outC, outH, outW, kernel, stride)
  std::array<double, kWidth> Vector() const;
};

inline constexpr char kLatencyMetric[] = "latency_ms";
inline constexpr char kEnergyMetric[] = "energy_mj";

// Primitive key -> measured cost on one device for one metric.
class ProfilingTable {
 public:
  ProfilingTable() = default;
  ProfilingTable(std::string device_name, std::string metric)
      : device_name_(std::move(device_name)), metric_(std::move(metric)) {}

  const std::string& device_name() const { return device_name_; }
  const std::string& metric() const { return metric_; }

  // Throws Error on duplicate keys or non-positive / non-finite costs.
  void Insert(const PrimitiveKey& key, double cost);
  bool Contains(const PrimitiveKey& key) const;
  // Throws MissingEntryError naming the key.
  double Cost(const PrimitiveKey& key) const;
  size_t size() const { return entries_.size(); }
  const std::map<std::string, double>& entries() const { return entries_; }

  // "# device=<name> metric=<metric>" then "primitive_key,cost" rows.
  std::string ToCsv() const;
  static ProfilingTable FromCsv(std::string_view text);
  void WriteCsv(const std::string& path) const;
  static ProfilingTable ReadCsv(const std::string& path);

  bool operator==(const ProfilingTable&) const = default;

 private:
  std::string device_name_;
  std::string metric_;
  std::map<std::string, double> entries_;
};

}  // namespace nasforge

#endif  // NASFORGE_HWCOST_PROFILING_H_
