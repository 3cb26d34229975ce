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

#include "orfit/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "orfit/baselines.hpp"
#include "orfit/data/stream.hpp"
#include "orfit/error.hpp"
#include "orfit/ipca.hpp"
#include "orfit/linalg/ops.hpp"
#include "orfit/rls.hpp"

namespace orfit::harness {

namespace {

std::vector<std::uint64_t> seeds_for(VerifyScale scale) {
  return scale == VerifyScale::kQuick ? std::vector<std::uint64_t>{11, 12}
                                      : std::vector<std::uint64_t>{11, 12, 13, 14, 15};
}

std::vector<StreamSample> linear_stream(std::size_t p, std::size_t k, std::uint64_t seed) {
  return data::synthetic_stream({p, k, 0, seed, data::SyntheticKind::kGaussianLinear, {}}).samples;
}

// Tiny tanh network (p = 8*20 + 20 + 20 + 1 = 201) and a teacher-generated stream.
constexpr std::size_t kNtkInput = 8;
const std::vector<std::size_t> kNtkHidden{20};

std::vector<StreamSample> mlp_stream(std::size_t k, std::uint64_t seed) {
  return data::synthetic_stream({kNtkInput, k, 0, seed, data::SyntheticKind::kGaussianMlp, {16}})
      .samples;
}

OrfitState unbounded_start(const DenseVector& w0) {
  return OrfitState::initial(w0, MemoryPolicy{MemoryKind::kUnbounded, 0, 0});
}

VerifyEntry finish(std::string name, double max_error, double tolerance, std::string detail = {}) {
  return {std::move(name), max_error <= tolerance, max_error, tolerance, std::move(detail)};
}

// sin of the largest principal angle between orthonormal bases, bounded above by
// ||(I - A A^T) B||_F.
double subspace_gap(std::span<const DenseVector> a, std::span<const DenseVector> b) {
  double sum = 0.0;
  for (const DenseVector& col : b) {
    DenseVector r = col;
    for (int pass = 0; pass < 2; ++pass) {
      for (const DenseVector& q : a) {
        axpy(-dot(q, r), q, r);
      }
    }
    sum += dot(r, r);
  }
  return std::sqrt(sum);
}

// Top-`rank` left singular vectors of the p x n matrix with columns `cols`, via
// the eigen-decomposition of its n x n Gram matrix.
std::vector<DenseVector> top_left_singular(std::span<const DenseVector> cols, std::size_t rank) {
  const std::size_t n = cols.size();
  DenseMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gram(i, j) = dot(cols[i], cols[j]);
    }
  }
  const SvdResult svd = svd_small(gram);
  std::vector<DenseVector> out;
  for (std::size_t r = 0; r < rank; ++r) {
    DenseVector u(cols[0].size());
    for (std::size_t j = 0; j < n; ++j) {
      axpy(svd.v(j, r), cols[j], u);
    }
    u *= 1.0 / norm(u);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.passed; });
}

std::string VerifyReport::format() const {
  std::string out;
  for (const VerifyEntry& e : entries) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %-28s max_error=%.3e tol=%.1e", e.passed ? "PASS" : "FAIL",
                  e.name.c_str(), e.max_error, e.tolerance);
    out += buf;
    if (!e.detail.empty()) {
      out += "  " + e.detail;
    }
    out += '\n';
  }
  return out;
}

VerifyEntry check_orfit_matches_ewrls(VerifyScale scale) {
  const std::size_t p = 64;
  const ModelSpec model = ModelSpec::linear(p);
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = linear_stream(p, 32, seed);
    const DenseVector w0 = init_parameters(model, seed, 0.01);
    OrfitState orfit = unbounded_start(w0);
    RlsState rls = RlsState::initial(w0, 0.0);
    for (const StreamSample& s : stream) {
      orfit = orfit_step(std::move(orfit), model, LossSpec{}, s);
      rls = ewrls_step(std::move(rls), s.x, s.y);
      worst = std::max(worst, relative_error_inf(orfit.w, rls.w));
    }
  }
  return finish("orfit_equals_ewrls", worst, 1e-8);
}

VerifyEntry check_projection_identity(VerifyScale scale) {
  const std::size_t p = 64;
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = linear_stream(p, 32, seed);
    RlsState rls = RlsState::initial(DenseVector(p), 0.0);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      rls = ewrls_step(std::move(rls), stream[i].x, stream[i].y);
      worst = std::max(worst, max_abs(rls.p * rls.p - rls.p));
      worst = std::max(worst, max_abs(rls.p - rls.p.transpose()));
      for (std::size_t k = 0; k <= i; ++k) {
        worst = std::max(worst, norm_inf(rls.p * stream[k].x));
      }
    }
  }
  return finish("projection_identity", worst, 1e-8);
}

VerifyEntry check_min_norm(VerifyScale scale) {
  const std::size_t p = 64;
  const ModelSpec model = ModelSpec::linear(p);
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = linear_stream(p, 32, seed);
    const DenseVector w0 = init_parameters(model, seed, 0.01);
    OrfitState orfit = unbounded_start(w0);
    std::vector<DenseVector> rows;
    std::vector<double> targets;
    for (const StreamSample& s : stream) {
      orfit = orfit_step(std::move(orfit), model, LossSpec{}, s);
      rows.push_back(s.x);
      targets.push_back(s.y);
      worst = std::max(worst, relative_error_inf(orfit.w, min_norm_oracle(rows, targets, w0)));
    }
  }
  return finish("min_norm_solution", worst, 1e-6);
}

VerifyEntry check_interpolation(VerifyScale scale, const OrfitStepFn& step) {
  const std::size_t p = 64;
  const ModelSpec model = ModelSpec::linear(p);
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = linear_stream(p, 32, seed);
    OrfitState st = unbounded_start(init_parameters(model, seed, 0.01));
    std::vector<double> before;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      st = step(std::move(st), model, LossSpec{}, stream[i]);
      const std::vector<double> after =
          predictions_on(std::span(stream).first(i + 1), model, st.w);
      for (std::size_t k = 0; k < i; ++k) {
        worst = std::max(worst, std::abs(after[k] - before[k]) / (1.0 + std::abs(stream[k].y)));
      }
      worst = std::max(worst, std::abs(after[i] - stream[i].y));
      before = after;
    }
  }
  return finish("interpolation_no_forgetting", worst, 1e-8,
                "drift scaled by 1/(1+|y|); fit absolute");
}

VerifyEntry check_sgd_implicit_bias(VerifyScale /*scale*/) {
  const std::size_t p = 32;
  const ModelSpec model = ModelSpec::linear(p);
  const auto stream = linear_stream(p, 16, 21);
  const DenseVector w0 = init_parameters(model, 21, 0.01);
  OrfitState orfit = unbounded_start(w0);
  for (const StreamSample& s : stream) {
    orfit = orfit_step(std::move(orfit), model, LossSpec{}, s);
  }
  BaselineConfig cfg;
  cfg.kind = BaselineKind::kSgdMultipass;
  cfg.step_size = 1e-3;
  cfg.max_iterations = 500000;
  cfg.epochs = cfg.max_iterations / stream.size() + 1;
  cfg.grad_tolerance = 1e-9;
  cfg.shuffle_seed = 21;
  const SgdResult sgd = sgd_multipass(stream, model, LossSpec{}, cfg, w0);
  char detail[96];
  std::snprintf(detail, sizeof detail, "iterations=%zu grad_norm=%.2e", sgd.iterations,
                sgd.grad_norm);
  return finish("sgd_converges_to_orfit", relative_error_inf(sgd.w, orfit.w), 1e-3, detail);
}

VerifyEntry check_ntk_equivalence(VerifyScale scale) {
  const ModelSpec model = ModelSpec::mlp(kNtkInput, kNtkHidden);
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = mlp_stream(20, seed);
    const DenseVector w0 = init_parameters(model, seed, 1.0);
    OrfitState orfit = unbounded_start(w0);
    RlsState rls = RlsState::initial(w0, 0.0);
    for (const StreamSample& s : stream) {
      orfit = orfit_step(std::move(orfit), model, LossSpec{}, s);
      rls = ntkrls_step(std::move(rls), model, s.x, s.y);
      worst = std::max(worst, relative_error_inf(orfit.w, rls.w));
    }
  }
  return finish("orfit_equals_ntkrls", worst, 1e-6);
}

VerifyEntry check_linearized_constraints(VerifyScale scale) {
  const ModelSpec model = ModelSpec::mlp(kNtkInput, kNtkHidden);
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = mlp_stream(20, seed);
    OrfitState st = unbounded_start(init_parameters(model, seed, 1.0));
    std::vector<LinearizedSample> lin;
    for (const StreamSample& s : stream) {
      lin.push_back(linearize(model, st.w, s));
      st = orfit_step(std::move(st), model, LossSpec{}, s);
      for (const LinearizedSample& l : lin) {
        worst = std::max(worst, std::abs(dot(l.grad, st.w) - l.ytilde));
      }
    }
  }
  return finish("linearized_constraints", worst, 1e-8);
}

VerifyEntry check_gradient_fd(VerifyScale scale) {
  const ModelSpec model = ModelSpec::mlp(kNtkInput, kNtkHidden);
  const double h = 1e-6;
  double worst = 0.0;
  for (std::uint64_t seed : seeds_for(scale)) {
    const auto stream = mlp_stream(4, seed);
    DenseVector w = init_parameters(model, seed, 1.0);
    for (const StreamSample& s : stream) {
      const DenseVector g = gradient(model, w, s.x);
      DenseVector fd(model.param_dim());
      for (std::size_t j = 0; j < model.param_dim(); ++j) {
        const double saved = w[j];
        w[j] = saved + h;
        const double up = predict(model, w, s.x);
        w[j] = saved - h;
        const double down = predict(model, w, s.x);
        w[j] = saved;
        fd[j] = (up - down) / (2.0 * h);
      }
      worst = std::max(worst, relative_error_inf(g, fd));
    }
  }
  return finish("gradient_finite_difference", worst, 1e-5);
}

VerifyEntry check_ipca_exactness(VerifyScale /*scale*/) {
  const std::size_t p = 100;
  const std::size_t m = 10;
  std::mt19937_64 rng(31);
  std::normal_distribution<double> normal;
  // 12 mutually orthogonal residuals with distinct norms, in a shuffled order.
  std::vector<DenseVector> raw;
  while (raw.size() < 12) {
    std::vector<double> v(p);
    for (double& e : v) {
      e = normal(rng);
    }
    if (auto q = gram_schmidt_append(raw, DenseVector(v), kGramSchmidtTolerance)) {
      raw.push_back(*q);
    }
  }
  std::vector<double> norms{3.0, 0.5, 7.0, 1.5, 4.5, 0.25, 6.0, 2.0, 5.5, 1.0, 8.0, 0.75};
  std::vector<DenseVector> residuals;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    DenseVector r = raw[i];
    r *= norms[i] / norm(raw[i]);
    residuals.push_back(std::move(r));
  }

  SubspaceSummary summary(p, m);
  for (std::size_t i = 0; i < m; ++i) {
    summary.append(residuals[i]);
  }
  std::vector<DenseVector> gs;
  for (std::size_t i = 0; i < m; ++i) {
    gs.push_back(*gram_schmidt_append(gs, residuals[i], kGramSchmidtTolerance));
  }
  double worst = subspace_gap(summary.columns(), gs);

  summary.append(residuals[10]);
  summary.append(residuals[11]);
  worst = std::max(worst, subspace_gap(summary.columns(), top_left_singular(residuals, m)));
  return finish("ipca_exactness", std::asin(std::min(1.0, worst)), 1e-8, "largest principal angle");
}

VerifyEntry check_ewrls_closed_form(VerifyScale /*scale*/) {
  const std::size_t p = 20;
  double worst = 0.0;
  for (double lambda : {1.0, 0.9, 0.5}) {
    const auto stream = linear_stream(p, 10, 41);
    const DenseVector w0 = init_parameters(ModelSpec::linear(p), 41, 0.01);
    RlsState rls = RlsState::initial(w0, lambda);
    std::vector<DenseVector> rows;
    std::vector<double> targets;
    for (const StreamSample& s : stream) {
      rls = ewrls_step(std::move(rls), s.x, s.y);
      rows.push_back(s.x);
      targets.push_back(s.y);
      const DenseVector oracle =
          closed_form_ewrls(rows, targets, lambda, DenseMatrix::identity(p), w0);
      worst = std::max(worst, relative_error_inf(rls.w, oracle));
    }
  }
  return finish("ewrls_closed_form", worst, 1e-8);
}

VerifyReport verify_suite(VerifyScale scale) {
  VerifyReport report;
  auto run = [&](const char* name, auto&& check) {
    try {
      report.entries.push_back(check());
    } catch (const Error& e) {
      report.entries.push_back({name, false, INFINITY, 0.0, std::string("threw: ") + e.what()});
    }
  };
  run("orfit_equals_ewrls", [&] { return check_orfit_matches_ewrls(scale); });
  run("projection_identity", [&] { return check_projection_identity(scale); });
  run("min_norm_solution", [&] { return check_min_norm(scale); });
  run("interpolation_no_forgetting", [&] { return check_interpolation(scale); });
  run("sgd_converges_to_orfit", [&] { return check_sgd_implicit_bias(scale); });
  run("orfit_equals_ntkrls", [&] { return check_ntk_equivalence(scale); });
  run("linearized_constraints", [&] { return check_linearized_constraints(scale); });
  run("gradient_finite_difference", [&] { return check_gradient_fd(scale); });
  run("ipca_exactness", [&] { return check_ipca_exactness(scale); });
  run("ewrls_closed_form", [&] { return check_ewrls_closed_form(scale); });
  return report;
}

}  // namespace orfit::harness
