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

#include <optional>
#include <span>
#include <vector>

#include "orfit/linalg/dense.hpp"

namespace orfit {

/// Norms at or below this are treated as the zero vector.
inline constexpr double kZeroTolerance = 1e-12;
/// Default relative tolerance of gram_schmidt_append.
inline constexpr double kGramSchmidtTolerance = 1e-10;

/// g - sum_v (v.g / |v|^2) v over a pairwise-orthogonal (not necessarily
/// normalized) basis. Orthogonality of the basis is the caller's contract and
/// is not re-checked.
///
/// Throws ContractViolation on a length mismatch and DegenerateBasis when a
/// basis vector has norm <= kZeroTolerance.
DenseVector project_onto_complement(const DenseVector& g, std::span<const DenseVector> basis);

/// Residual of `v` against `basis` with two projection passes, or nullopt
/// when the residual norm is <= tol * (1 + |v|), i.e. v is already in the span.
std::optional<DenseVector> gram_schmidt_append(std::span<const DenseVector> basis,
                                               const DenseVector& v,
                                               double tol = kGramSchmidtTolerance);

struct SvdResult {
  DenseMatrix u;
  std::vector<double> s;  // non-negative, descending
  DenseMatrix v;
};

/// Full SVD of a small square matrix by one-sided (Hestenes) Jacobi rotations.
///
/// Equal singular values keep their original column order. Throws
/// ContractViolation for non-square input and NumericalFailure when the sweeps
/// do not converge.
SvdResult svd_small(const DenseMatrix& m);

}  // namespace orfit
