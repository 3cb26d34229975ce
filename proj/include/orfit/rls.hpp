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

// Exponentially-weighted recursive least squares, its linearized (NTK)
// generalization, and the direct solvers used to check both.
//
// The recursion carries w and P with P_0 = Pi^{-1}:
//
//   d   = lambda^i + phi^T P phi
//   w  += P phi (y - f) / d
//   P  -= P phi phi^T P / d
//
// where phi = x and f = w^T x for the linear model, and phi = grad f(x; w),
// f = f(x; w) for NTK-RLS. lambda = 0 is accepted: P then stays the orthogonal
// projector off the span of the phi seen so far.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orfit/linalg/dense.hpp"
#include "orfit/models.hpp"
#include "orfit/sample.hpp"

namespace orfit {

struct RlsState {
  DenseVector w;
  DenseMatrix p;
  double lambda;
  DenseMatrix pi;
  std::size_t step = 0;

  /// P_0 = Pi^{-1}. Throws ConfigError for lambda outside [0, 1] and
  /// NumericalFailure when Pi is not positive definite.
  static RlsState initial(DenseVector w0, double lambda, DenseMatrix pi);
  /// Pi = I.
  static RlsState initial(DenseVector w0, double lambda);
};

/// Streamed datum of the linearized problem at step k:
/// grad = grad f_k(w_{k-1}), ytilde = y_k - f_k(w_{k-1}) + grad^T w_{k-1}.
struct LinearizedSample {
  DenseVector grad;
  double ytilde;
};

LinearizedSample linearize(const ModelSpec& model, const DenseVector& w,
                           const StreamSample& sample);

/// Relative threshold on phi^T P phi / |phi|^2 for the lambda = 0 degenerate branch.
inline constexpr double kRlsDenominatorTolerance = 1e-10;

RlsState ewrls_step(RlsState state, const DenseVector& x, double y);
RlsState ntkrls_step(RlsState state, const ModelSpec& model, const DenseVector& x, double y);

/// Direct minimizer of sum_k lambda^{i-k} (y_k - w^T x_k)^2 + lambda^i |w - w0|^2_Pi
/// via the normal equations (Pi + X^T Lambda X) w = X^T Lambda Y + Pi w0 with
/// Lambda = diag(lambda^{-1}, ..., lambda^{-i}). Requires 0 < lambda <= 1.
DenseVector closed_form_ewrls(std::span<const DenseVector> rows, std::span<const double> targets,
                              double lambda, const DenseMatrix& pi, const DenseVector& w0);

/// Matrix form of closed_form_ewrls; rows of `x` are the inputs.
DenseVector closed_form_ewrls(const DenseMatrix& x, const DenseVector& y, double lambda,
                              const DenseMatrix& pi, const DenseVector& w0);

/// argmin |w - w0| subject to rows_k^T w = targets_k, through the Gram system
/// (R R^T) a = targets - R w0, w = w0 + R^T a. Throws InconsistentStream when
/// the rows are (numerically) linearly dependent.
DenseVector min_norm_oracle(std::span<const DenseVector> rows, std::span<const double> targets,
                            const DenseVector& w0);

}  // namespace orfit
