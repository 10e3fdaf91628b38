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

#ifndef NASFORGE_NN_TENSOR_IO_H_
#define NASFORGE_NN_TENSOR_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "nasforge/nn/tensor.h"

namespace nasforge::nn {

struct NamedTensor {
  std::string name;
  Tensor2 value;
};

// Ordered (name, shape, values) list; the payload of every checkpoint.
class TensorList {
 public:
  void Add(std::string name, Tensor2 value);
  void AddScalar(std::string name, double value);
  void AddInts(std::string name, const std::vector<int>& values);

  bool Has(const std::string& name) const;
  // Throw CheckpointError for missing names.
  const Tensor2& Get(const std::string& name) const;
  // Also checks the stored shape.
  const Tensor2& Get(const std::string& name, size_t rows, size_t cols) const;
  double GetScalar(const std::string& name) const;
  std::vector<int> GetInts(const std::string& name) const;

  const std::vector<NamedTensor>& entries() const { return entries_; }

 private:
  std::vector<NamedTensor> entries_;
};

struct TensorFile {
  std::string kind;
  uint32_t version = 1;
  TensorList tensors;
};

// Binary layout (little endian): "NFTL", u32 format, u32 len + kind,
// u32 version, u64 count, then per tensor u32 len + name, u64 rows,
// u64 cols, f64 values; trailing u64 FNV-1a of all preceding bytes.
// Written to a temporary file and renamed into place.
void WriteTensorFile(const std::string& path, const TensorFile& file);
// Throws CheckpointError on unreadable, truncated or corrupt files.
TensorFile ReadTensorFile(const std::string& path);

std::string EncodeTensorFile(const TensorFile& file);
TensorFile DecodeTensorFile(const std::string& bytes);

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_TENSOR_IO_H_
