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

#include "orfit/linalg/dense.hpp"

namespace orfit {

/// Lower-triangular Cholesky factor L of a symmetric positive-definite A = L L^T.
class Cholesky {
 public:
  /// Throws NumericalFailure when a pivot falls to <= rel_pivot_floor times
  /// the largest diagonal entry of A (A not numerically positive definite).
  explicit Cholesky(const DenseMatrix& a, double rel_pivot_floor = 1e-14);

  DenseVector solve(const DenseVector& b) const;
  DenseMatrix inverse() const;

 private:
  DenseMatrix l_;
};

}  // namespace orfit
