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

#include "orfit/linalg/solve.hpp"

#include <algorithm>
#include <cmath>

#include "orfit/error.hpp"
#include "orfit/linalg/kernels.hpp"

namespace orfit {

Cholesky::Cholesky(const DenseMatrix& a, double rel_pivot_floor) : l_(a.rows(), a.cols()) {
  if (a.rows() != a.cols()) {
    throw ContractViolation("Cholesky: matrix must be square");
  }
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    max_diag = std::max(max_diag, std::abs(a(i, i)));
  }
  const auto& k = kernels::active();
  for (std::size_t j = 0; j < n; ++j) {
    const double pivot = a(j, j) - k.dot(l_.row(j).data(), l_.row(j).data(), j);
    if (!(pivot > rel_pivot_floor * max_diag)) {
      throw NumericalFailure("Cholesky: matrix is not numerically positive definite");
    }
    const double ljj = std::sqrt(pivot);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      l_(i, j) = (a(i, j) - k.dot(l_.row(i).data(), l_.row(j).data(), j)) / ljj;
    }
  }
}

DenseVector Cholesky::solve(const DenseVector& b) const {
  const std::size_t n = l_.rows();
  if (b.size() != n) {
    throw ContractViolation("Cholesky::solve: dimension mismatch");
  }
  const auto& k = kernels::active();
  DenseVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = (b[i] - k.dot(l_.row(i).data(), y.data(), i)) / l_(i, i);
  }
  DenseVector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      s -= l_(j, i) * x[j];
    }
    x[i] = s / l_(i, i);
  }
  return x;
}

DenseMatrix Cholesky::inverse() const {
  const std::size_t n = l_.rows();
  DenseMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    DenseVector e(n);
    e[c] = 1.0;
    const DenseVector col = solve(e);
    for (std::size_t r = 0; r < n; ++r) {
      inv(r, c) = col[r];
    }
  }
  inv.symmetrize();
  return inv;
}

}  // namespace orfit
