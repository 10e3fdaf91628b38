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

#include "nasforge/hwcost/profiling.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "nasforge/common/error.h"

namespace nasforge {

int StridedSize(int n, int stride) { return (n + stride - 1) / stride; }

Shape3 PrimitiveKey::OutShape() const {
  return {out_channels, StridedSize(in.h, stride), StridedSize(in.w, stride)};
}

std::string PrimitiveKey::ToString() const {
  return "ib_c" + std::to_string(in.c) + "_h" + std::to_string(in.h) + "_w" +
         std::to_string(in.w) + "_o" + std::to_string(out_channels) + "_k" +
         std::to_string(kernel) + "_s" + std::to_string(stride) + "_e" +
         std::to_string(expansion);
}

PrimitiveKey PrimitiveKey::Parse(std::string_view text) {
  static const std::regex kKey(
      "ib_c([0-9]+)_h([0-9]+)_w([0-9]+)_o([0-9]+)_k([0-9]+)_s([0-9]+)_e([0-9]+)");
  std::smatch m;
  const std::string s(text);
  if (!std::regex_match(s, m, kKey)) {
    throw GenotypeError("malformed primitive key: " + s);
  }
  PrimitiveKey key;
  key.in = {std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
  key.out_channels = std::stoi(m[4]);
  key.kernel = std::stoi(m[5]);
  key.stride = std::stoi(m[6]);
  key.expansion = std::stoi(m[7]);
  return key;
}

std::array<double, BlockFeature::kWidth> BlockFeature::Vector() const {
  return {cost,
          static_cast<double>(in_shape.c),
          static_cast<double>(in_shape.h),
          static_cast<double>(in_shape.w),
          static_cast<double>(out_shape.c),
          static_cast<double>(out_shape.h),
          static_cast<double>(out_shape.w),
          static_cast<double>(kernel),
          static_cast<double>(stride)};
}

void ProfilingTable::Insert(const PrimitiveKey& key, double cost) {
  if (!std::isfinite(cost) || cost <= 0.0) {
    throw Error("profiling table: cost for " + key.ToString() +
                " must be positive");
  }
  if (!entries_.emplace(key.ToString(), cost).second) {
    throw Error("profiling table: duplicate key " + key.ToString());
  }
}

bool ProfilingTable::Contains(const PrimitiveKey& key) const {
  return entries_.count(key.ToString()) > 0;
}

double ProfilingTable::Cost(const PrimitiveKey& key) const {
  auto it = entries_.find(key.ToString());
  if (it == entries_.end()) {
    throw MissingEntryError("profiling table has no entry for primitive " +
                            key.ToString());
  }
  return it->second;
}

std::string ProfilingTable::ToCsv() const {
  std::ostringstream out;
  out << "# device=" << device_name_ << " metric=" << metric_ << "\n";
  out << "primitive_key,cost\n";
  for (const auto& [key, cost] : entries_) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), cost);
    out << key << "," << std::string(buf, ptr) << "\n";
  }
  return out.str();
}

ProfilingTable ProfilingTable::FromCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  ProfilingTable table;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string field;
      while (meta >> field) {
        if (field.rfind("device=", 0) == 0) table.device_name_ = field.substr(7);
        if (field.rfind("metric=", 0) == 0) table.metric_ = field.substr(7);
      }
      continue;
    }
    if (!header) {
      if (line != "primitive_key,cost") {
        throw Error("profiling table line " + std::to_string(line_no) +
                    ": expected header 'primitive_key,cost'");
      }
      header = true;
      continue;
    }
    const size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error("profiling table line " + std::to_string(line_no) +
                  ": expected 'key,cost'");
    }
    double cost = 0.0;
    const std::string value = line.substr(comma + 1);
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), cost);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error("profiling table line " + std::to_string(line_no) +
                  ": bad cost '" + value + "'");
    }
    table.Insert(PrimitiveKey::Parse(line.substr(0, comma)), cost);
  }
  if (!header) throw Error("profiling table: missing header");
  return table;
}

void ProfilingTable::WriteCsv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << ToCsv();
}

ProfilingTable ProfilingTable::ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromCsv(buffer.str());
}

}  // namespace nasforge
