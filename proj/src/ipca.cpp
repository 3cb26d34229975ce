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

#include "orfit/ipca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orfit/error.hpp"
#include "orfit/linalg/kernels.hpp"
#include "orfit/linalg/ops.hpp"

namespace orfit {

namespace {

// Cross-term magnitude allowed between the incoming residual and col(U).
constexpr double kCrossTermTolerance = 1e-8;

}  // namespace

SubspaceSummary::SubspaceSummary(std::size_t param_dim, std::size_t memory_cap)
    : param_dim_(param_dim), memory_cap_(memory_cap) {
  if (param_dim == 0) {
    throw ContractViolation("SubspaceSummary: param_dim must be positive");
  }
  if (memory_cap == 0) {
    throw ConfigError("SubspaceSummary: memory cap must be at least 1");
  }
}

SubspaceSummary SubspaceSummary::from_parts(std::size_t param_dim, std::size_t memory_cap,
                                            std::vector<DenseVector> columns,
                                            std::vector<double> sigma, std::size_t absorbed) {
  SubspaceSummary s(param_dim, memory_cap);
  if (columns.size() != sigma.size() || columns.size() > memory_cap) {
    throw ContractViolation("SubspaceSummary: inconsistent column/sigma counts");
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].size() != param_dim) {
      throw ContractViolation("SubspaceSummary: column length mismatch");
    }
    if (!(sigma[i] > 0.0) || (i > 0 && sigma[i] > sigma[i - 1])) {
      throw ContractViolation("SubspaceSummary: sigma must be positive and descending");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(dot(columns[i], columns[j]) - expected) > 1e-8) {
        throw ContractViolation("SubspaceSummary: columns are not orthonormal");
      }
    }
  }
  s.columns_ = std::move(columns);
  s.sigma_ = std::move(sigma);
  s.absorbed_ = absorbed;
  return s;
}

DenseMatrix SubspaceSummary::u_matrix() const { return DenseMatrix::from_columns(columns_); }

DenseVector SubspaceSummary::project_complement(const DenseVector& g) const {
  if (g.size() != param_dim_) {
    throw ContractViolation("summary_project_complement: dimension mismatch");
  }
  const auto& k = kernels::active();
  std::vector<double> coeff(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    coeff[j] = k.dot(columns_[j].data(), g.data(), param_dim_);
  }
  DenseVector r = g;
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    k.axpy(-coeff[j], columns_[j].data(), r.data(), param_dim_);
  }
  return r;
}

void SubspaceSummary::append(const DenseVector& v) {
  if (v.size() != param_dim_) {
    throw ContractViolation("ipca_append: dimension mismatch");
  }
  ++absorbed_;
  const double vnorm = norm(v);
  if (vnorm <= kZeroTolerance) {
    return;
  }

  const auto& k = kernels::active();
  const double smax = sigma_.empty() ? 0.0 : sigma_.front();
  double cross = 0.0;
  for (const DenseVector& u : columns_) {
    cross = std::max(cross, std::abs(k.dot(u.data(), v.data(), param_dim_)));
  }
  if (cross > kCrossTermTolerance * std::max(smax, vnorm)) {
    throw ContractViolation("ipca_append: residual is not orthogonal to the summary (|U^T v| = " +
                            std::to_string(cross) + ")");
  }

  DenseVector u = v;
  u *= 1.0 / vnorm;

  // Inner matrix [[Sigma, 0], [0, u^T v]].
  const std::size_t r = columns_.size();
  DenseMatrix inner(r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    inner(i, i) = sigma_[i];
  }
  inner(r, r) = dot(u, v);
  const SvdResult svd = svd_small(inner);

  const std::size_t keep = std::min(r + 1, memory_cap_);
  std::vector<DenseVector> next;
  next.reserve(keep);
  std::vector<double> next_sigma;
  next_sigma.reserve(keep);
  for (std::size_t c = 0; c < keep; ++c) {
    DenseVector col(param_dim_);
    for (std::size_t j = 0; j < r; ++j) {
      const double coeff = svd.u(j, c);
      if (coeff != 0.0) {
        k.axpy(coeff, columns_[j].data(), col.data(), param_dim_);
      }
    }
    if (svd.u(r, c) != 0.0) {
      k.axpy(svd.u(r, c), u.data(), col.data(), param_dim_);
    }
    next.push_back(std::move(col));
    next_sigma.push_back(svd.s[c]);
  }
  columns_ = std::move(next);
  sigma_ = std::move(next_sigma);
}

SubspaceSummary ipca_append(SubspaceSummary s, const DenseVector& v) {
  s.append(v);
  return s;
}

DenseVector summary_project_complement(const SubspaceSummary& s, const DenseVector& g) {
  return s.project_complement(g);
}

}  // namespace orfit
