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

#include "nasforge/nn/tensor.h"

#include <Eigen/Core>
#include <cmath>

#include "nasforge/common/error.h"

namespace nasforge::nn {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

ConstMap View(const Tensor2& t) {
  return ConstMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                  static_cast<Eigen::Index>(t.cols()));
}

MutMap View(Tensor2& t) {
  return MutMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                static_cast<Eigen::Index>(t.cols()));
}

[[noreturn]] void ShapeFail(const char* what, const Tensor2& a,
                            const Tensor2& b) {
  throw ShapeError(std::string(what) + ": shape mismatch " + a.ShapeString() +
                   " vs " + b.ShapeString());
}

}  // namespace

Tensor2::Tensor2(size_t rows, size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("Tensor2: data length " + std::to_string(data_.size()) +
                     " != " + std::to_string(rows_) + "x" +
                     std::to_string(cols_));
  }
}

Tensor2 Tensor2::Row(std::vector<double> values) {
  const size_t n = values.size();
  return Tensor2(1, n, std::move(values));
}

Tensor2 Tensor2::Identity(size_t n) {
  Tensor2 t(n, n);
  for (size_t i = 0; i < n; ++i) t(i, i) = 1.0;
  return t;
}

bool Tensor2::AllFinite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor2::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

std::string Tensor2::ShapeString() const {
  return "(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
}

Tensor2& Tensor2::operator+=(const Tensor2& other) {
  CheckSameShape(*this, other, "operator+=");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Tensor2& Tensor2::operator-=(const Tensor2& other) {
  CheckSameShape(*this, other, "operator-=");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Tensor2& Tensor2::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

void CheckSameShape(const Tensor2& a, const Tensor2& b, const char* what) {
  if (!a.SameShape(b)) ShapeFail(what, a, b);
}

Tensor2 MatMul(const Tensor2& a, const Tensor2& b) {
  if (a.cols() != b.rows()) ShapeFail("MatMul", a, b);
  Tensor2 out(a.rows(), b.cols());
  View(out).noalias() = View(a) * View(b);
  return out;
}

Tensor2 MatMulTransB(const Tensor2& a, const Tensor2& b) {
  if (a.cols() != b.cols()) ShapeFail("MatMulTransB", a, b);
  Tensor2 out(a.rows(), b.rows());
  View(out).noalias() = View(a) * View(b).transpose();
  return out;
}

Tensor2 MatMulTransA(const Tensor2& a, const Tensor2& b) {
  if (a.rows() != b.rows()) ShapeFail("MatMulTransA", a, b);
  Tensor2 out(a.cols(), b.cols());
  View(out).noalias() = View(a).transpose() * View(b);
  return out;
}

void AddRowBroadcast(Tensor2& x, const Tensor2& row) {
  if (row.rows() != 1 || row.cols() != x.cols()) {
    ShapeFail("AddRowBroadcast", x, row);
  }
  for (size_t r = 0; r < x.rows(); ++r) {
    for (size_t c = 0; c < x.cols(); ++c) x(r, c) += row[c];
  }
}

Tensor2 SumRows(const Tensor2& x) {
  Tensor2 out(1, x.cols());
  for (size_t r = 0; r < x.rows(); ++r) {
    for (size_t c = 0; c < x.cols(); ++c) out[c] += x(r, c);
  }
  return out;
}

Tensor2 ConcatCols(const Tensor2& a, const Tensor2& b) {
  if (a.rows() != b.rows()) ShapeFail("ConcatCols", a, b);
  Tensor2 out(a.rows(), a.cols() + b.cols());
  for (size_t r = 0; r < a.rows(); ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), out.row(r).begin());
    std::copy(b.row(r).begin(), b.row(r).end(),
              out.row(r).begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  return out;
}

Tensor2 SliceCols(const Tensor2& x, size_t begin, size_t end) {
  if (begin > end || end > x.cols()) {
    throw ShapeError("SliceCols: bad range on " + x.ShapeString());
  }
  Tensor2 out(x.rows(), end - begin);
  for (size_t r = 0; r < x.rows(); ++r) {
    for (size_t c = begin; c < end; ++c) out(r, c - begin) = x(r, c);
  }
  return out;
}

Tensor2 Hadamard(const Tensor2& a, const Tensor2& b) {
  CheckSameShape(a, b, "Hadamard");
  Tensor2 out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
  return out;
}

}  // namespace nasforge::nn
