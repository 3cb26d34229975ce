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

#include "orfit/linalg/ops.hpp"

#include <string>

#include "orfit/error.hpp"
#include "orfit/linalg/kernels.hpp"

namespace orfit {

namespace {

void subtract_projections(DenseVector& r, std::span<const DenseVector> basis) {
  const auto& k = kernels::active();
  for (const DenseVector& v : basis) {
    const double vv = k.dot(v.data(), v.data(), v.size());
    const double coeff = k.dot(v.data(), r.data(), r.size()) / vv;
    k.axpy(-coeff, v.data(), r.data(), r.size());
  }
}

void check_basis(const DenseVector& g, std::span<const DenseVector> basis, const char* what) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_same_size(basis[i], g, what);
    if (norm(basis[i]) <= kZeroTolerance) {
      throw DegenerateBasis(std::string(what) + ": basis vector " + std::to_string(i) +
                            " has (near) zero norm");
    }
  }
}

}  // namespace

DenseVector project_onto_complement(const DenseVector& g, std::span<const DenseVector> basis) {
  check_basis(g, basis, "project_onto_complement");
  DenseVector r = g;
  subtract_projections(r, basis);
  return r;
}

std::optional<DenseVector> gram_schmidt_append(std::span<const DenseVector> basis,
                                               const DenseVector& v, double tol) {
  check_basis(v, basis, "gram_schmidt_append");
  DenseVector r = v;
  subtract_projections(r, basis);
  subtract_projections(r, basis);
  if (norm(r) <= tol * (1.0 + norm(v))) {
    return std::nullopt;
  }
  return r;
}

}  // namespace orfit
