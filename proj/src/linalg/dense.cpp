// Copyright 2026 The ORFit Authors
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

#include "orfit/linalg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orfit/error.hpp"
#include "orfit/linalg/kernels.hpp"

namespace orfit {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ContractViolation(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t n) : values_(n, 0.0) {
  if (n == 0) {
    throw ContractViolation("DenseVector: length must be positive");
  }
}

DenseVector::DenseVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw ContractViolation("DenseVector: length must be positive");
  }
  require_finite(values_, "DenseVector");
}

DenseVector::DenseVector(std::initializer_list<double> values)
    : DenseVector(std::vector<double>(values)) {}

DenseVector& DenseVector::operator+=(const DenseVector& other) {
  require_same_size(*this, other, "DenseVector::operator+=");
  kernels::active().axpy(1.0, other.data(), data(), size());
  return *this;
}

DenseVector& DenseVector::operator-=(const DenseVector& other) {
  require_same_size(*this, other, "DenseVector::operator-=");
  kernels::active().axpy(-1.0, other.data(), data(), size());
  return *this;
}

DenseVector& DenseVector::operator*=(double s) {
  kernels::active().scale(s, data(), size());
  return *this;
}

DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
DenseVector operator*(double s, DenseVector a) { return a *= s; }

double dot(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "dot");
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double norm(const DenseVector& a) {
  return std::sqrt(kernels::active().dot(a.data(), a.data(), a.size()));
}

double norm_inf(const DenseVector& a) {
  double m = 0.0;
  for (double v : a) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

void axpy(double alpha, const DenseVector& x, DenseVector& y) {
  require_same_size(x, y, "axpy");
  kernels::active().axpy(alpha, x.data(), y.data(), x.size());
}

double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double relative_error_inf(const DenseVector& a, const DenseVector& b, double floor) {
  return max_abs_diff(a, b) / std::max(norm_inf(b), floor);
}

void require_same_size(const DenseVector& a, const DenseVector& b, std::string_view what) {
  if (a.size() != b.size()) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw ContractViolation("DenseMatrix: dimensions must be positive");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0) {
    throw ContractViolation("DenseMatrix: dimensions must be positive");
  }
  if (values_.size() != rows * cols) {
    throw ContractViolation("DenseMatrix: entry count does not match rows x cols");
  }
  require_finite(values_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) {
    throw ContractViolation("DenseMatrix: dimensions must be positive");
  }
  values_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw ContractViolation("DenseMatrix: ragged initializer");
    }
    values_.insert(values_.end(), r.begin(), r.end());
  }
  require_finite(values_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(i, i) = d[i];
  }
  return m;
}

DenseMatrix DenseMatrix::from_columns(std::span<const DenseVector> columns) {
  if (columns.empty()) {
    throw ContractViolation("DenseMatrix::from_columns: no columns");
  }
  DenseMatrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require_same_size(columns[c], columns.front(), "DenseMatrix::from_columns");
    for (std::size_t r = 0; r < m.rows(); ++r) {
      m(r, c) = columns[c][r];
    }
  }
  return m;
}

DenseVector DenseMatrix::column(std::size_t c) const {
  DenseVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    v[r] = (*this)(r, c);
  }
  return v;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      t(c, r) = (*this)(r, c);
    }
  }
  return t;
}

void DenseMatrix::symmetrize() {
  if (rows_ != cols_) {
    throw ContractViolation("DenseMatrix::symmetrize: matrix is not square");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      const double avg = 0.5 * ((*this)(r, c) + (*this)(c, r));
      (*this)(r, c) = avg;
      (*this)(c, r) = avg;
    }
  }
}

DenseVector operator*(const DenseMatrix& a, const DenseVector& x) {
  if (a.cols() != x.size()) {
    throw ContractViolation("matrix-vector product: dimension mismatch");
  }
  DenseVector y(a.rows());
  kernels::active().gemv(a.data(), a.rows(), a.cols(), x.data(), y.data());
  return y;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ContractViolation("matrix product: dimension mismatch");
  }
  const auto& k = kernels::active();
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      k.axpy(a(r, i), b.row(i).data(), out.row(r).data(), b.cols());
    }
  }
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractViolation("matrix difference: dimension mismatch");
  }
  DenseMatrix out = a;
  kernels::active().axpy(-1.0, b.data(), out.data(), a.rows() * a.cols());
  return out;
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.values()) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace orfit
