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

#include "wane/numkernel.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace wane {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  require(data_.size() == rows_ * cols_, "Matrix: value count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::col(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

namespace {

// Four doubles; lowered to whatever SIMD width the target offers.
typedef double Lanes __attribute__((vector_size(32)));

Lanes load_lanes(const double* p) {
  Lanes v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

void store_lanes(double* p, Lanes v) { std::memcpy(p, &v, sizeof v); }

// C (m x n) = A (m x k) B (k x n), all row-major and contiguous. Each entry
// is summed over k in ascending order, exactly like the textbook triple loop;
// the 6 x 8 register block only reuses loads across rows and columns.
void gemm(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
  constexpr std::size_t kRows = 6, kCols = 8;
  std::size_t i = 0;
  for (; i + kRows <= m; i += kRows) {
    std::size_t j = 0;
    for (; j + kCols <= n; j += kCols) {
      Lanes acc[kRows][2] = {};
      for (std::size_t p = 0; p < k; ++p) {
        const Lanes b0 = load_lanes(b + p * n + j), b1 = load_lanes(b + p * n + j + 4);
        for (std::size_t r = 0; r < kRows; ++r) {
          const double av = a[(i + r) * k + p];
          acc[r][0] += av * b0;
          acc[r][1] += av * b1;
        }
      }
      for (std::size_t r = 0; r < kRows; ++r) {
        store_lanes(c + (i + r) * n + j, acc[r][0]);
        store_lanes(c + (i + r) * n + j + 4, acc[r][1]);
      }
    }
    for (; j < n; ++j) {
      for (std::size_t r = 0; r < kRows; ++r) {
        double acc = 0.0;
        for (std::size_t p = 0; p < k; ++p) acc += a[(i + r) * k + p] * b[p * n + j];
        c[(i + r) * n + j] = acc;
      }
    }
  }
  for (; i < m; ++i) {
    double* out = c + i * n;
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = a[i * k + p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) out[j] += av * brow[j];
    }
  }
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  gemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(), c.data());
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "matmul_tn: inner dimensions differ");
  const Matrix at = transpose(a);
  Matrix c(a.cols(), b.cols());
  gemm(a.cols(), b.cols(), a.rows(), at.data(), b.data(), c.data());
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.cols(), "matmul_nt: inner dimensions differ");
  const Matrix bt = transpose(b);
  Matrix c(a.rows(), b.rows());
  gemm(a.rows(), b.rows(), a.cols(), a.data(), bt.data(), c.data());
  return c;
}

MatmulGrads matmul_backward(const Matrix& a, const Matrix& b, const Matrix& dc) {
  require(dc.rows() == a.rows() && dc.cols() == b.cols(), "matmul_backward: gradient shape");
  return {matmul_nt(dc, b), matmul_tn(a, dc)};
}

Matrix col_softmax(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double mx = -INFINITY;
    for (std::size_t r = 0; r < a.rows(); ++r) mx = std::max(mx, a(r, c));
    double total = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      out(r, c) = std::exp(a(r, c) - mx);
      total += out(r, c);
    }
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) /= total;
  }
  return out;
}

Matrix col_softmax_backward(const Matrix& out, const Matrix& grad_out) {
  require(out.rows() == grad_out.rows() && out.cols() == grad_out.cols(),
          "col_softmax_backward: shape mismatch");
  Matrix g(out.rows(), out.cols());
  for (std::size_t c = 0; c < out.cols(); ++c) {
    double gs = 0.0;
    for (std::size_t r = 0; r < out.rows(); ++r) gs += grad_out(r, c) * out(r, c);
    for (std::size_t r = 0; r < out.rows(); ++r) g(r, c) = (grad_out(r, c) - gs) * out(r, c);
  }
  return g;
}

MaxPool maxpool_cols(const Matrix& m) {
  require(m.rows() > 0 && m.cols() > 0, "maxpool_cols: empty matrix");
  MaxPool pool{Vector(m.rows()), std::vector<std::size_t>(m.rows(), 0)};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c)
      if (row[c] > row[best]) best = c;
    pool.values[r] = row[best];
    pool.argmax[r] = best;
  }
  return pool;
}

Matrix maxpool_cols_backward(const MaxPool& pool, std::size_t cols, std::span<const double> grad_out) {
  require(grad_out.size() == pool.values.size(), "maxpool_cols_backward: gradient length");
  Matrix g(pool.values.size(), cols);
  for (std::size_t r = 0; r < pool.values.size(); ++r) g(r, pool.argmax[r]) = grad_out[r];
  return g;
}

Vector meanpool_cols(const Matrix& m) {
  require(m.rows() > 0 && m.cols() > 0, "meanpool_cols: empty matrix");
  Vector out(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (double x : m.row(r)) s += x;
    out[r] = s / static_cast<double>(m.cols());
  }
  return out;
}

Matrix meanpool_cols_backward(std::size_t rows, std::size_t cols, std::span<const double> grad_out) {
  require(grad_out.size() == rows && cols > 0, "meanpool_cols_backward: gradient length");
  Matrix g(rows, cols);
  const double scale = 1.0 / static_cast<double>(cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = grad_out[r] * scale;
  return g;
}

Vector sub(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "sub: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector mul(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "mul: length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

BinaryGrads sub_backward(std::span<const double> grad_out) {
  BinaryGrads g{Vector(grad_out.begin(), grad_out.end()), Vector(grad_out.size())};
  for (std::size_t i = 0; i < grad_out.size(); ++i) g.db[i] = -grad_out[i];
  return g;
}

BinaryGrads mul_backward(std::span<const double> a, std::span<const double> b,
                         std::span<const double> grad_out) {
  require(a.size() == b.size() && a.size() == grad_out.size(), "mul_backward: length mismatch");
  return {mul(grad_out, b), mul(grad_out, a)};
}

Vector tanh(std::span<const double> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::tanh(v[i]);
  return out;
}

Vector tanh_backward(std::span<const double> t, std::span<const double> grad_out) {
  require(t.size() == grad_out.size(), "tanh_backward: length mismatch");
  Vector g(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) g[i] = grad_out[i] * (1.0 - t[i] * t[i]);
  return g;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Vector sigmoid(std::span<const double> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = sigmoid(v[i]);
  return out;
}

Vector sigmoid_backward(std::span<const double> s, std::span<const double> grad_out) {
  require(s.size() == grad_out.size(), "sigmoid_backward: length mismatch");
  Vector g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) g[i] = grad_out[i] * s[i] * (1.0 - s[i]);
  return g;
}

double log_sigmoid(double x) {
  // -softplus(-x) = -(max(-x, 0) + log1p(exp(-|x|)))
  return -(std::max(-x, 0.0) + std::log1p(std::exp(-std::abs(x))));
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace wane
