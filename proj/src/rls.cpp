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

#include "orfit/rls.hpp"

#include <cmath>
#include <string>

#include "orfit/error.hpp"
#include "orfit/learner.hpp"
#include "orfit/linalg/kernels.hpp"
#include "orfit/linalg/solve.hpp"

namespace orfit {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("RLS: forgetting factor must lie in [0, 1]");
  }
}

// Shared body of both recursions: feature phi, prediction f at the current w.
RlsState rls_update(RlsState state, const DenseVector& phi, double f, double y) {
  if (phi.size() != state.w.size()) {
    throw ContractViolation("RLS step: feature length does not match parameter length");
  }
  const auto& k = kernels::active();
  const std::size_t p = phi.size();
  const std::size_t i = state.step + 1;
  const double lambda_i = std::pow(state.lambda, static_cast<double>(i));

  DenseVector p_phi(p);
  k.gemv(state.p.data(), p, p, phi.data(), p_phi.data());
  const double quad = k.dot(phi.data(), p_phi.data(), p);
  const double denom = lambda_i + quad;
  const double residual = y - f;

  if (state.lambda == 0.0) {
    const double phi_sq = k.dot(phi.data(), phi.data(), p);
    if (denom <= kRlsDenominatorTolerance * phi_sq) {
      if (std::abs(residual) <= kFitTolerance * (1.0 + std::abs(y))) {
        state.step = i;
        return state;
      }
      throw InconsistentStream("RLS step: datum " + std::to_string(i) +
                               " lies in the span of earlier data but is not fit");
    }
  } else if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw NumericalFailure("RLS step: non-positive denominator");
  }

  k.axpy(residual / denom, p_phi.data(), state.w.data(), p);
  k.ger(-1.0 / denom, p_phi.data(), p_phi.data(), state.p.data(), p, p);
  state.p.symmetrize();
  state.step = i;
  return state;
}

}  // namespace

RlsState RlsState::initial(DenseVector w0, double lambda, DenseMatrix pi) {
  check_lambda(lambda);
  if (pi.rows() != w0.size() || pi.cols() != w0.size()) {
    throw ContractViolation("RlsState: Pi must be p x p");
  }
  DenseMatrix p0 = Cholesky(pi).inverse();
  return RlsState{std::move(w0), std::move(p0), lambda, std::move(pi), 0};
}

RlsState RlsState::initial(DenseVector w0, double lambda) {
  const std::size_t p = w0.size();
  check_lambda(lambda);
  return RlsState{std::move(w0), DenseMatrix::identity(p), lambda, DenseMatrix::identity(p), 0};
}

LinearizedSample linearize(const ModelSpec& model, const DenseVector& w,
                           const StreamSample& sample) {
  PredictionAndGradient pg = predict_with_gradient(model, w, sample.x);
  const double ytilde = sample.y - pg.value + dot(pg.gradient, w);
  return {std::move(pg.gradient), ytilde};
}

RlsState ewrls_step(RlsState state, const DenseVector& x, double y) {
  if (x.size() != state.w.size()) {
    throw ContractViolation("ewrls_step: input length does not match parameter length");
  }
  const double f = dot(state.w, x);
  return rls_update(std::move(state), x, f, y);
}

RlsState ntkrls_step(RlsState state, const ModelSpec& model, const DenseVector& x, double y) {
  PredictionAndGradient pg = predict_with_gradient(model, state.w, x);
  return rls_update(std::move(state), pg.gradient, pg.value, y);
}

DenseVector closed_form_ewrls(std::span<const DenseVector> rows, std::span<const double> targets,
                              double lambda, const DenseMatrix& pi, const DenseVector& w0) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ConfigError("closed_form_ewrls: lambda must lie in (0, 1]");
  }
  if (rows.size() != targets.size()) {
    throw ContractViolation("closed_form_ewrls: row/target count mismatch");
  }
  const std::size_t p = w0.size();
  if (pi.rows() != p || pi.cols() != p) {
    throw ContractViolation("closed_form_ewrls: Pi must be p x p");
  }
  if (rows.empty()) {
    return w0;
  }
  const auto& k = kernels::active();
  DenseMatrix normal = pi;
  DenseVector rhs = pi * w0;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    require_same_size(rows[idx], w0, "closed_form_ewrls");
    const double weight = std::pow(lambda, -static_cast<double>(idx + 1));
    k.ger(weight, rows[idx].data(), rows[idx].data(), normal.data(), p, p);
    k.axpy(weight * targets[idx], rows[idx].data(), rhs.data(), p);
  }
  normal.symmetrize();
  return Cholesky(normal).solve(rhs);
}

DenseVector closed_form_ewrls(const DenseMatrix& x, const DenseVector& y, double lambda,
                              const DenseMatrix& pi, const DenseVector& w0) {
  if (x.rows() != y.size()) {
    throw ContractViolation("closed_form_ewrls: row/target count mismatch");
  }
  std::vector<DenseVector> rows;
  rows.reserve(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    rows.emplace_back(std::vector<double>(x.row(r).begin(), x.row(r).end()));
  }
  return closed_form_ewrls(rows, y.values(), lambda, pi, w0);
}

DenseVector min_norm_oracle(std::span<const DenseVector> rows, std::span<const double> targets,
                            const DenseVector& w0) {
  if (rows.size() != targets.size()) {
    throw ContractViolation("min_norm_oracle: row/target count mismatch");
  }
  if (rows.empty()) {
    return w0;
  }
  const std::size_t n = rows.size();
  DenseMatrix gram(n, n);
  DenseVector rhs(n);
  for (std::size_t a = 0; a < n; ++a) {
    require_same_size(rows[a], w0, "min_norm_oracle");
    for (std::size_t b = 0; b <= a; ++b) {
      gram(a, b) = dot(rows[a], rows[b]);
      gram(b, a) = gram(a, b);
    }
    rhs[a] = targets[a] - dot(rows[a], w0);
  }
  DenseVector alpha(n);
  try {
    alpha = Cholesky(gram, 1e-12).solve(rhs);
  } catch (const NumericalFailure&) {
    throw InconsistentStream("min_norm_oracle: constraint rows are linearly dependent");
  }
  DenseVector w = w0;
  for (std::size_t a = 0; a < n; ++a) {
    axpy(alpha[a], rows[a], w);
  }
  return w;
}

}  // namespace orfit
