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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace orfit {

/// Fixed-length vector of finite doubles.
///
/// Constructors reject empty input and any NaN/Inf entry. The length never
/// changes after construction; entries may be overwritten in place.
class DenseVector {
 public:
  /// Zero vector of length `n` (n >= 1).
  explicit DenseVector(std::size_t n);
  explicit DenseVector(std::vector<double> values);
  DenseVector(std::initializer_list<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  const double* data() const { return values_.data(); }
  double* data() { return values_.data(); }
  std::span<const double> view() const { return values_; }
  std::span<double> view() { return values_; }
  const std::vector<double>& values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  DenseVector& operator+=(const DenseVector& other);
  DenseVector& operator-=(const DenseVector& other);
  DenseVector& operator*=(double s);

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

DenseVector operator+(DenseVector a, const DenseVector& b);
DenseVector operator-(DenseVector a, const DenseVector& b);
DenseVector operator*(double s, DenseVector a);

double dot(const DenseVector& a, const DenseVector& b);
double norm(const DenseVector& a);
double norm_inf(const DenseVector& a);
/// y += alpha * x
void axpy(double alpha, const DenseVector& x, DenseVector& y);
/// max_i |a_i - b_i|
double max_abs_diff(const DenseVector& a, const DenseVector& b);
/// ||a - b||_inf / max(||b||_inf, floor)
double relative_error_inf(const DenseVector& a, const DenseVector& b, double floor = 1e-300);

/// Row-major matrix of finite doubles with positive dimensions.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  /// Nested initializer, one inner list per row.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  /// Matrix whose columns are the given vectors (all of equal length).
  static DenseMatrix from_columns(std::span<const DenseVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  DenseVector column(std::size_t c) const;

  const double* data() const { return values_.data(); }
  double* data() { return values_.data(); }
  const std::vector<double>& values() const { return values_; }

  DenseMatrix transpose() const;
  /// P <- (P + P^T) / 2; requires a square matrix.
  void symmetrize();

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

DenseVector operator*(const DenseMatrix& a, const DenseVector& x);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
double max_abs(const DenseMatrix& a);

/// Throws ContractViolation unless `a` and `b` have the same length.
void require_same_size(const DenseVector& a, const DenseVector& b, std::string_view what);

}  // namespace orfit
