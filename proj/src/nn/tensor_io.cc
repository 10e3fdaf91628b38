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

#include "nasforge/nn/tensor_io.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nasforge/common/error.h"

namespace nasforge::nn {
namespace {

constexpr char kMagic[4] = {'N', 'F', 'T', 'L'};
constexpr uint32_t kFormatVersion = 1;

uint64_t Fnv1a(const char* data, size_t n) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001B3ULL;
  }
  return h;
}

template <typename T>
void Put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

void PutString(std::string& out, const std::string& s) {
  Put<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out += s;
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  template <typename T>
  T Take() {
    Need(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string TakeString() {
    const auto n = Take<uint32_t>();
    Need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  size_t pos() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(size_t n) const {
    if (bytes_.size() - pos_ < n) throw CheckpointError("corrupt file: truncated");
  }
  const std::string& bytes_;
  size_t pos_ = 0;
};

}  // namespace

void TensorList::Add(std::string name, Tensor2 value) {
  entries_.push_back({std::move(name), std::move(value)});
}

void TensorList::AddScalar(std::string name, double value) {
  Add(std::move(name), Tensor2(1, 1, {value}));
}

void TensorList::AddInts(std::string name, const std::vector<int>& values) {
  std::vector<double> data(values.begin(), values.end());
  const size_t n = data.size();
  Add(std::move(name), Tensor2(1, n, std::move(data)));
}

bool TensorList::Has(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

const Tensor2& TensorList::Get(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e.value;
  }
  throw CheckpointError("checkpoint has no tensor '" + name + "'");
}

const Tensor2& TensorList::Get(const std::string& name, size_t rows,
                               size_t cols) const {
  const Tensor2& t = Get(name);
  if (t.rows() != rows || t.cols() != cols) {
    throw CheckpointError("checkpoint tensor '" + name + "' has shape " +
                          t.ShapeString() + ", expected (" +
                          std::to_string(rows) + "x" + std::to_string(cols) +
                          ")");
  }
  return t;
}

double TensorList::GetScalar(const std::string& name) const {
  return Get(name, 1, 1)[0];
}

std::vector<int> TensorList::GetInts(const std::string& name) const {
  const Tensor2& t = Get(name);
  std::vector<int> out;
  out.reserve(t.size());
  for (double v : t.values()) out.push_back(static_cast<int>(v));
  return out;
}

std::string EncodeTensorFile(const TensorFile& file) {
  std::string out(kMagic, sizeof(kMagic));
  Put<uint32_t>(out, kFormatVersion);
  PutString(out, file.kind);
  Put<uint32_t>(out, file.version);
  Put<uint64_t>(out, file.tensors.entries().size());
  for (const auto& e : file.tensors.entries()) {
    PutString(out, e.name);
    Put<uint64_t>(out, e.value.rows());
    Put<uint64_t>(out, e.value.cols());
    out.append(reinterpret_cast<const char*>(e.value.data()),
               e.value.size() * sizeof(double));
  }
  Put<uint64_t>(out, Fnv1a(out.data(), out.size()));
  return out;
}

TensorFile DecodeTensorFile(const std::string& bytes) {
  if (bytes.size() < sizeof(kMagic) + sizeof(uint64_t) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CheckpointError("corrupt file: bad magic");
  }
  const size_t body = bytes.size() - sizeof(uint64_t);
  uint64_t stored = 0;
  std::memcpy(&stored, bytes.data() + body, sizeof(stored));
  if (stored != Fnv1a(bytes.data(), body)) {
    throw CheckpointError("corrupt file: checksum mismatch");
  }
  const std::string payload = bytes.substr(0, body);
  Reader in(payload);
  in.Take<uint32_t>();  // magic
  if (in.Take<uint32_t>() != kFormatVersion) {
    throw CheckpointError("unsupported tensor file format version");
  }
  TensorFile file;
  file.kind = in.TakeString();
  file.version = in.Take<uint32_t>();
  const auto count = in.Take<uint64_t>();
  for (uint64_t i = 0; i < count; ++i) {
    std::string name = in.TakeString();
    const auto rows = in.Take<uint64_t>();
    const auto cols = in.Take<uint64_t>();
    if (cols != 0 && rows > in.remaining() / sizeof(double) / cols) {
      throw CheckpointError("corrupt file: tensor '" + name + "' too large");
    }
    std::vector<double> data(rows * cols);
    for (auto& v : data) v = in.Take<double>();
    file.tensors.Add(std::move(name), Tensor2(rows, cols, std::move(data)));
  }
  if (in.remaining() != 0) throw CheckpointError("corrupt file: trailing bytes");
  return file;
}

void WriteTensorFile(const std::string& path, const TensorFile& file) {
  const std::string bytes = EncodeTensorFile(file);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CheckpointError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

TensorFile ReadTensorFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return DecodeTensorFile(buffer.str());
}

}  // namespace nasforge::nn
