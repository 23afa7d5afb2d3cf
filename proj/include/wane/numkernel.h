// Copyright (c) 2026 The WANE Authors. All Rights Reserved.
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

#pragma once

// Dense double-precision kernels with hand-derived backward rules. Forward
// functions return whatever the matching backward needs (softmax outputs,
// argmax indices); there is no general autodiff tape.

#include <cstddef>
#include <span>
#include <vector>

namespace wane {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vector col(std::size_t c) const;

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double value);
  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);

// C = A B.
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A^T B without materialising the transpose.
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// C = A B^T.
Matrix matmul_nt(const Matrix& a, const Matrix& b);

struct MatmulGrads {
  Matrix da;
  Matrix db;
};
// For C = A B: dA = dC B^T, dB = A^T dC.
MatmulGrads matmul_backward(const Matrix& a, const Matrix& b, const Matrix& dc);

// Softmax down each column, stabilised by the column max.
Matrix col_softmax(const Matrix& a);
// Column-wise Jacobian-vector product (g - (g . s) 1) * s, given s = forward output.
Matrix col_softmax_backward(const Matrix& out, const Matrix& grad_out);

struct MaxPool {
  Vector values;                    // one per row
  std::vector<std::size_t> argmax;  // first occurrence on ties
};
// Row-wise max over the columns.
MaxPool maxpool_cols(const Matrix& m);
Matrix maxpool_cols_backward(const MaxPool& pool, std::size_t cols, std::span<const double> grad_out);

Vector meanpool_cols(const Matrix& m);
Matrix meanpool_cols_backward(std::size_t rows, std::size_t cols, std::span<const double> grad_out);

Vector sub(std::span<const double> a, std::span<const double> b);
Vector mul(std::span<const double> a, std::span<const double> b);

struct BinaryGrads {
  Vector da;
  Vector db;
};
BinaryGrads sub_backward(std::span<const double> grad_out);
BinaryGrads mul_backward(std::span<const double> a, std::span<const double> b,
                         std::span<const double> grad_out);

Vector tanh(std::span<const double> v);
// Takes the forward output t = tanh(x).
Vector tanh_backward(std::span<const double> t, std::span<const double> grad_out);

double sigmoid(double x);
Vector sigmoid(std::span<const double> v);
// Takes the forward output s = sigmoid(x).
Vector sigmoid_backward(std::span<const double> s, std::span<const double> grad_out);

// log(sigmoid(x)) = -softplus(-x), finite for every finite x.
double log_sigmoid(double x);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace wane
