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

#ifndef NASFORGE_NN_TENSOR_H_
#define NASFORGE_NN_TENSOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nasforge::nn {

// Dense row-major matrix of doubles.
class Tensor2 {
 public:
  Tensor2() = default;
  Tensor2(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Throws ShapeError unless data.size() == rows * cols.
  Tensor2(size_t rows, size_t cols, std::vector<double> data);

  static Tensor2 Row(std::vector<double> values);
  static Tensor2 Identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
  double& operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }
  std::span<double> row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  bool SameShape(const Tensor2& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool AllFinite() const;
  void Fill(double value);
  std::string ShapeString() const;

  Tensor2& operator+=(const Tensor2& other);
  Tensor2& operator-=(const Tensor2& other);
  Tensor2& operator*=(double scale);

  friend bool operator==(const Tensor2& a, const Tensor2& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b
Tensor2 MatMul(const Tensor2& a, const Tensor2& b);
// a * b^T
Tensor2 MatMulTransB(const Tensor2& a, const Tensor2& b);
// a^T * b
Tensor2 MatMulTransA(const Tensor2& a, const Tensor2& b);

// Adds the 1 x cols `row` to every row of `x`.
void AddRowBroadcast(Tensor2& x, const Tensor2& row);
// Column sums as a 1 x cols tensor.
Tensor2 SumRows(const Tensor2& x);
Tensor2 ConcatCols(const Tensor2& a, const Tensor2& b);
Tensor2 SliceCols(const Tensor2& x, size_t begin, size_t end);
Tensor2 Hadamard(const Tensor2& a, const Tensor2& b);

// Throws ShapeError with `what` unless shapes agree.
void CheckSameShape(const Tensor2& a, const Tensor2& b, const char* what);

}  // namespace nasforge::nn

#endif  // NASFORGE_NN_TENSOR_H_
