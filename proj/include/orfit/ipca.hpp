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
#include <span>
#include <vector>

#include "orfit/linalg/dense.hpp"

namespace orfit {

/// Rank-limited summary of the span of a stream of mutually orthogonal
/// residual vectors: orthonormal left singular vectors U (p x r, r <= m) and
/// the matching singular values, descending. No right singular vectors are
/// kept.
class SubspaceSummary {
 public:
  SubspaceSummary(std::size_t param_dim, std::size_t memory_cap);

  /// Rebuilds a summary from stored parts (checkpoint restore). Validates
  /// shapes, orthonormality (1e-8) and the ordering of `sigma`.
  static SubspaceSummary from_parts(std::size_t param_dim, std::size_t memory_cap,
                                    std::vector<DenseVector> columns, std::vector<double> sigma,
                                    std::size_t absorbed);

  std::size_t param_dim() const { return param_dim_; }
  std::size_t memory_cap() const { return memory_cap_; }
  std::size_t rank() const { return columns_.size(); }
  /// Vectors ever passed to append, including zero no-ops.
  std::size_t absorbed() const { return absorbed_; }

  /// Columns of U.
  std::span<const DenseVector> columns() const { return columns_; }
  const std::vector<double>& sigma() const { return sigma_; }
  /// U as a p x r matrix; requires rank() >= 1.
  DenseMatrix u_matrix() const;

  /// g - U (U^T g).
  DenseVector project_complement(const DenseVector& g) const;

  /// In-place form of ipca_append.
  void append(const DenseVector& v);

 private:
  std::size_t param_dim_;
  std::size_t memory_cap_;
  std::vector<DenseVector> columns_;
  std::vector<double> sigma_;
  std::size_t absorbed_ = 0;
};

/// Absorbs an already-projected residual `v` (orthogonal to col(U)) with the
/// sequential Karhunen-Loeve update and keeps the top memory_cap components.
/// Vectors with norm <= kZeroTolerance only bump absorbed().
///
/// Throws ContractViolation when v has the wrong length or is not orthogonal
/// to the summary (|U^T v| > 1e-8 * max(sigma_max, |v|)).
SubspaceSummary ipca_append(SubspaceSummary s, const DenseVector& v);

DenseVector summary_project_complement(const SubspaceSummary& s, const DenseVector& g);

}  // namespace orfit
