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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "orfit/error.hpp"
#include "orfit/linalg/ops.hpp"

namespace orfit {

namespace {

constexpr int kMaxSweeps = 80;

// Rows of a column-store are the columns of the matrix being orthogonalized.
struct ColumnStore {
  std::size_t n;
  std::vector<double> data;
  double* col(std::size_t j) { return data.data() + j * n; }
  const double* col(std::size_t j) const { return data.data() + j * n; }
};

double col_dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i] * b[i];
  }
  return s;
}

void rotate(double* a, double* b, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a[i];
    const double bi = b[i];
    a[i] = c * ai - s * bi;
    b[i] = s * ai + c * bi;
  }
}

// Fills column `j` of `u` with a unit vector orthogonal to the columns in
// `filled`, trying canonical basis vectors in order.
void complete_column(ColumnStore& u, std::size_t j, const std::vector<std::size_t>& filled) {
  const std::size_t n = u.n;
  for (std::size_t e = 0; e < n; ++e) {
    std::vector<double> cand(n, 0.0);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t f : filled) {
        const double c = col_dot(u.col(f), cand.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
          cand[i] -= c * u.col(f)[i];
        }
      }
    }
    const double nrm = std::sqrt(col_dot(cand.data(), cand.data(), n));
    if (nrm > 0.5) {
      for (std::size_t i = 0; i < n; ++i) {
        u.col(j)[i] = cand[i] / nrm;
      }
      return;
    }
  }
  throw NumericalFailure("svd_small: could not complete orthonormal basis");
}

}  // namespace

SvdResult svd_small(const DenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ContractViolation("svd_small: matrix must be square");
  }
  const std::size_t n = m.rows();
  const double eps = std::numeric_limits<double>::epsilon();

  ColumnStore w{n, std::vector<double>(n * n)};
  ColumnStore v{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      w.col(j)[i] = m(i, j);
    }
    v.col(j)[j] = 1.0;
  }

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double alpha = col_dot(w.col(i), w.col(i), n);
        const double beta = col_dot(w.col(j), w.col(j), n);
        const double gamma = col_dot(w.col(i), w.col(j), n);
        if (alpha == 0.0 || beta == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) {
          continue;
        }
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        rotate(w.col(i), w.col(j), n, c, s);
        rotate(v.col(i), v.col(j), n, c, s);
      }
    }
  }
  if (!converged) {
    throw NumericalFailure("svd_small: Jacobi sweeps did not converge");
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    sigma[j] = std::sqrt(col_dot(w.col(j), w.col(j), n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  const double smax = n == 0 ? 0.0 : sigma[order.front()];
  const double rank_floor = smax * static_cast<double>(n) * eps;

  ColumnStore u{n, std::vector<double>(n * n, 0.0)};
  std::vector<std::size_t> filled;
  std::vector<std::size_t> deficient;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    if (sigma[j] > rank_floor && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        u.col(k)[i] = w.col(j)[i] / sigma[j];
      }
      filled.push_back(k);
    } else {
      deficient.push_back(k);
    }
  }
  for (std::size_t k : deficient) {
    complete_column(u, k, filled);
    filled.push_back(k);
  }

  SvdResult out{DenseMatrix(n, n), std::vector<double>(n), DenseMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) {
      out.u(i, k) = u.col(k)[i];
      out.v(i, k) = v.col(j)[i];
    }
  }
  return out;
}

}  // namespace orfit
