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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Criteria 1-7 check the library against dense Eigen oracles; 8-9 run the
// Rotated-MNIST presets from configs/; 10 runs the step-time benchmark.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orfit/baselines.hpp"
#include "orfit/data/fetch.hpp"
#include "orfit/data/stream.hpp"
#include "orfit/harness/bench.hpp"
#include "orfit/harness/config.hpp"
#include "orfit/harness/experiment.hpp"
#include "orfit/ipca.hpp"
#include "orfit/learner.hpp"
#include "orfit/rls.hpp"
#include "test_util.hpp"

namespace {

using namespace orfit;
using orfit::testing::to_eigen;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double rel_inf(const VectorXd& a, const VectorXd& b) {
  return (a - b).lpNorm<Eigen::Infinity>() / std::max(b.lpNorm<Eigen::Infinity>(), 1e-300);
}

double rel_inf(const DenseVector& a, const VectorXd& b) { return rel_inf(to_eigen(a), b); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// argmin |w - w0| s.t. X w = y, by complete orthogonal decomposition.
VectorXd eigen_min_norm(const MatrixXd& x, const VectorXd& y, const VectorXd& w0) {
  return w0 + x.completeOrthogonalDecomposition().solve(y - x * w0);
}

MatrixXd rows_of(const std::vector<StreamSample>& s, std::size_t count) {
  MatrixXd x(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(s.front().x.size()));
  for (std::size_t k = 0; k < count; ++k) {
    x.row(static_cast<Eigen::Index>(k)) = to_eigen(s[k].x).transpose();
  }
  return x;
}

VectorXd targets_of(const std::vector<StreamSample>& s, std::size_t count) {
  VectorXd y(static_cast<Eigen::Index>(count));
  for (std::size_t k = 0; k < count; ++k) {
    y[static_cast<Eigen::Index>(k)] = s[k].y;
  }
  return y;
}

const std::vector<std::uint64_t> kSeeds{0, 1, 2, 3, 4};
const LossSpec kLoss;

std::vector<StreamSample> linear_stream(std::size_t p, std::size_t k, std::uint64_t seed) {
  return data::synthetic_stream({p, k, 0, seed, data::SyntheticKind::kGaussianLinear, {}}).samples;
}

OrfitState unbounded(const DenseVector& w0) {
  return OrfitState::initial(w0, MemoryPolicy{MemoryKind::kUnbounded, 0, 0});
}

Outcome criterion_1() {
  const std::size_t p = 64;
  const ModelSpec lin = ModelSpec::linear(p);
  double w_err = 0.0;
  double idem = 0.0;
  double sym = 0.0;
  double annihilate = 0.0;
  double oracle = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto stream = linear_stream(p, 32, seed);
    const DenseVector w0 = init_parameters(lin, seed + 100, 0.01);
    OrfitState orfit = unbounded(w0);
    RlsState rls = RlsState::initial(w0, 0.0);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      orfit = orfit_step(std::move(orfit), lin, kLoss, stream[i]);
      rls = ewrls_step(std::move(rls), stream[i].x, stream[i].y);
      w_err = std::max(w_err, rel_inf(orfit.w, to_eigen(rls.w)));
      const MatrixXd pm = to_eigen(rls.p);
      idem = std::max(idem, (pm * pm - pm).cwiseAbs().maxCoeff());
      sym = std::max(sym, (pm - pm.transpose()).cwiseAbs().maxCoeff());
      for (std::size_t k = 0; k <= i; ++k) {
        annihilate = std::max(annihilate, (pm * to_eigen(stream[k].x)).lpNorm<Eigen::Infinity>());
      }
      const MatrixXd q = orfit::testing::orthonormal_basis(rows_of(stream, i + 1).transpose(),
                                                           static_cast<Eigen::Index>(i + 1));
      const MatrixXd proj = MatrixXd::Identity(p, p) - q * q.transpose();
      oracle = std::max(oracle, (pm - proj).cwiseAbs().maxCoeff());
    }
  }
  const bool ok = w_err <= 1e-8 && idem <= 1e-8 && sym <= 1e-8 && annihilate <= 1e-8 &&
                  oracle <= 1e-8;
  return {ok, "w rel=" + fmt(w_err) + " |P^2-P|=" + fmt(idem) + " |P-P^T|=" + fmt(sym) +
                  " |P x_k|=" + fmt(annihilate) + " |P-(I-QQ^T)|=" + fmt(oracle) + " tol=1e-8"};
}

Outcome criterion_2() {
  const std::size_t p = 64;
  const ModelSpec lin = ModelSpec::linear(p);
  double worst = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto stream = linear_stream(p, 32, seed);
    const DenseVector w0 = init_parameters(lin, seed + 100, 0.01);
    OrfitState st = unbounded(w0);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      st = orfit_step(std::move(st), lin, kLoss, stream[i]);
      const VectorXd oracle =
          eigen_min_norm(rows_of(stream, i + 1), targets_of(stream, i + 1), to_eigen(w0));
      worst = std::max(worst, rel_inf(st.w, oracle));
    }
  }
  return {worst <= 1e-6, "max rel err vs COD min-norm=" + fmt(worst) + " tol=1e-6"};
}

Outcome criterion_3() {
  const std::size_t p = 64;
  const ModelSpec lin = ModelSpec::linear(p);
  double drift = 0.0;
  double fit = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto stream = linear_stream(p, 32, seed);
    OrfitState st = unbounded(init_parameters(lin, seed + 100, 0.01));
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const VectorXd before = to_eigen(st.w);
      st = orfit_step(std::move(st), lin, kLoss, stream[i]);
      const VectorXd after = to_eigen(st.w);
      for (std::size_t k = 0; k < i; ++k) {
        const VectorXd xk = to_eigen(stream[k].x);
        drift = std::max(drift,
                         std::abs(xk.dot(after) - xk.dot(before)) / (1.0 + std::abs(stream[k].y)));
      }
      fit = std::max(fit, std::abs(to_eigen(stream[i].x).dot(after) - stream[i].y));
    }
  }
  return {drift <= 1e-8 && fit <= 1e-8,
          "max drift/(1+|y|)=" + fmt(drift) + " max fit err=" + fmt(fit) + " tol=1e-8"};
}

Outcome criterion_4() {
  const std::size_t p = 32;
  const ModelSpec lin = ModelSpec::linear(p);
  double vs_orfit = 0.0;
  double vs_oracle = 0.0;
  double grad = 0.0;
  std::size_t iters = 0;
  for (std::uint64_t seed : kSeeds) {
    const auto stream = linear_stream(p, 16, seed);
    const DenseVector w0 = init_parameters(lin, seed + 100, 0.01);
    OrfitState st = unbounded(w0);
    for (const StreamSample& s : stream) {
      st = orfit_step(std::move(st), lin, kLoss, s);
    }
    BaselineConfig cfg;
    cfg.kind = BaselineKind::kSgdMultipass;
    cfg.step_size = 1e-3;
    cfg.max_iterations = 500000;
    cfg.epochs = cfg.max_iterations;
    cfg.grad_tolerance = 1e-9;
    cfg.shuffle_seed = seed;
    const SgdResult sgd = sgd_multipass(stream, lin, kLoss, cfg, w0);
    vs_orfit = std::max(vs_orfit, rel_inf(sgd.w, to_eigen(st.w)));
    vs_oracle = std::max(
        vs_oracle, rel_inf(sgd.w, eigen_min_norm(rows_of(stream, 16), targets_of(stream, 16),
                                                 to_eigen(w0))));
    grad = std::max(grad, sgd.grad_norm);
    iters = std::max(iters, sgd.iterations);
  }
  return {vs_orfit <= 1e-3 && grad < 1e-9,
          "rel err SGD vs ORFit=" + fmt(vs_orfit) + " (vs COD oracle " + fmt(vs_oracle) +
              ") max |grad|=" + fmt(grad) + " max iterations=" + std::to_string(iters) +
              " tol=1e-3"};
}

Outcome criterion_5() {
  const ModelSpec model = ModelSpec::mlp(8, {20});
  const std::size_t p = model.param_dim();
  double rls_err = 0.0;
  double constraint = 0.0;
  double min_norm = 0.0;
  double fd = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto stream =
        data::synthetic_stream({8, 20, 0, seed, data::SyntheticKind::kGaussianMlp, {16}}).samples;
    const DenseVector w0 = init_parameters(model, seed + 100, 1.0);
    OrfitState orfit = unbounded(w0);
    RlsState rls = RlsState::initial(w0, 0.0);
    MatrixXd g(static_cast<Eigen::Index>(stream.size()), static_cast<Eigen::Index>(p));
    VectorXd ytilde(static_cast<Eigen::Index>(stream.size()));
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const StreamSample& s = stream[i];
      const auto row = static_cast<Eigen::Index>(i);
      // Central differences of the network output at the current iterate.
      DenseVector w = orfit.w;
      const VectorXd analytic = to_eigen(gradient(model, w, s.x));
      VectorXd numeric(static_cast<Eigen::Index>(p));
      const double h = 1e-6;
      for (std::size_t j = 0; j < p; ++j) {
        const double saved = w[j];
        w[j] = saved + h;
        const double up = predict(model, w, s.x);
        w[j] = saved - h;
        const double down = predict(model, w, s.x);
        w[j] = saved;
        numeric[static_cast<Eigen::Index>(j)] = (up - down) / (2.0 * h);
      }
      fd = std::max(fd, rel_inf(analytic, numeric));

      g.row(row) = analytic.transpose();
      ytilde[row] = s.y - predict(model, orfit.w, s.x) + analytic.dot(to_eigen(orfit.w));
      orfit = orfit_step(std::move(orfit), model, kLoss, s);
      rls = ntkrls_step(std::move(rls), model, s.x, s.y);
      rls_err = std::max(rls_err, rel_inf(orfit.w, to_eigen(rls.w)));
      const VectorXd wi = to_eigen(orfit.w);
      const MatrixXd gi = g.topRows(row + 1);
      constraint = std::max(constraint, (gi * wi - ytilde.head(row + 1)).lpNorm<Eigen::Infinity>());
      min_norm = std::max(min_norm, rel_inf(wi, eigen_min_norm(gi, ytilde.head(row + 1),
                                                               to_eigen(w0))));
    }
  }
  return {rls_err <= 1e-6 && constraint <= 1e-8 && fd <= 1e-5,
          "p=" + std::to_string(p) + " ORFit vs NTK-RLS rel=" + fmt(rls_err) +
              " (tol 1e-6) linearized constraints=" + fmt(constraint) +
              " (tol 1e-8) grad vs FD rel=" + fmt(fd) + " (tol 1e-5) vs COD min-norm=" +
              fmt(min_norm)};
}

Outcome criterion_6() {
  const std::size_t p = 20;
  double worst = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const auto stream = linear_stream(p, 10, seed);
    std::mt19937_64 rng(seed + 7);
    const DenseVector w0 = orfit::testing::random_vector(p, rng);
    const MatrixXd a = to_eigen(DenseMatrix::identity(p));
    MatrixXd b(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      b.data()[i] = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
    }
    const MatrixXd spd = a + 0.2 * b * b.transpose();
    for (const MatrixXd& pi_e : {a, spd}) {
      DenseMatrix pi(p, p);
      for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
          pi(r, c) = pi_e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
      }
      for (double lambda : {1.0, 0.9, 0.5}) {
        RlsState st = RlsState::initial(w0, lambda, pi);
        MatrixXd lhs = pi_e;
        VectorXd rhs = pi_e * to_eigen(w0);
        for (std::size_t i = 0; i < stream.size(); ++i) {
          st = ewrls_step(std::move(st), stream[i].x, stream[i].y);
          // Normal equations of sum_k lambda^{i-k} r_k^2 + lambda^i |w - w0|^2_Pi, scaled by lambda^-i.
          const double weight = std::pow(lambda, -static_cast<double>(i + 1));
          const VectorXd x = to_eigen(stream[i].x);
          lhs += weight * x * x.transpose();
          rhs += weight * stream[i].y * x;
          worst = std::max(worst, rel_inf(st.w, lhs.ldlt().solve(rhs)));
        }
      }
    }
  }
  return {worst <= 1e-8, "max rel err recursion vs normal equations=" + fmt(worst) + " tol=1e-8"};
}

Outcome criterion_7() {
  const Eigen::Index p = 100;
  const std::size_t m = 10;
  double first = 0.0;
  double second = 0.0;
  for (std::uint64_t seed : kSeeds) {
    std::mt19937_64 rng(seed + 40);
    std::normal_distribution<double> normal;
    MatrixXd g(p, 12);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      g.data()[i] = normal(rng);
    }
    const MatrixXd q = orfit::testing::orthonormal_basis(g, 12);
    std::vector<double> norms(12);
    std::iota(norms.begin(), norms.end(), 1.0);
    std::shuffle(norms.begin(), norms.end(), rng);
    MatrixXd residuals(p, 12);
    for (Eigen::Index j = 0; j < 12; ++j) {
      residuals.col(j) = norms[static_cast<std::size_t>(j)] * q.col(j);
    }

    SubspaceSummary summary(static_cast<std::size_t>(p), m);
    for (Eigen::Index j = 0; j < 12; ++j) {
      summary.append(orfit::testing::from_eigen(residuals.col(j)));
      if (j == 9) {
        const MatrixXd gs = orfit::testing::orthonormal_basis(residuals.leftCols(10), 10);
        first = std::max(first, orfit::testing::max_principal_angle(
                                    orfit::testing::columns_to_eigen(
                                        {summary.columns().begin(), summary.columns().end()}),
                                    gs));
      }
    }
    Eigen::JacobiSVD<MatrixXd> svd(residuals, Eigen::ComputeThinU);
    const MatrixXd top = svd.matrixU().leftCols(10);
    second = std::max(second, orfit::testing::max_principal_angle(
                                  orfit::testing::columns_to_eigen(
                                      {summary.columns().begin(), summary.columns().end()}),
                                  top));
  }
  return {first <= 1e-8 && second <= 1e-8,
          "max angle vs Gram-Schmidt (10 residuals)=" + fmt(first) +
              " vs top-10 SVD (12 residuals)=" + fmt(second) + " tol=1e-8"};
}

struct Summary {
  double final_test = 0.0;      // mean over seeds of the last row's test RMSE
  double final_train = 0.0;     // mean over seeds of the last row's train RMSE
  double max_final_train = 0.0;
  double tracked_after = 0.0;   // mean tracked error over rows with step >= tracked index
  double max_tracked_after = 0.0;
  double final_tracked = 0.0;   // mean over seeds of the last row's tracked error
  std::size_t failures = 0;
};

Summary summarize(const harness::ExperimentConfig& cfg, const harness::ExperimentResult& r) {
  Summary s;
  s.failures = r.failures.size();
  std::map<std::uint64_t, const harness::MetricsRow*> last;
  double tracked_sum = 0.0;
  std::size_t tracked_n = 0;
  for (const harness::MetricsRow& row : r.rows) {
    last[row.seed] = &row;
    if (cfg.learner == harness::LearnerKind::kBaseline &&
        cfg.baseline.kind == BaselineKind::kSgdMultipass) {
      continue;
    }
    if (row.step >= cfg.tracked_sample_index) {
      tracked_sum += row.tracked_pred_error;
      s.max_tracked_after = std::max(s.max_tracked_after, row.tracked_pred_error);
      ++tracked_n;
    }
  }
  for (const auto& [seed, row] : last) {
    s.final_test += row->test_error;
    s.final_train += row->train_error;
    s.final_tracked += row->tracked_pred_error;
    s.max_final_train = std::max(s.max_final_train, row->train_error);
  }
  const double n = static_cast<double>(std::max<std::size_t>(last.size(), 1));
  s.final_test /= n;
  s.final_train /= n;
  s.final_tracked /= n;
  s.tracked_after = tracked_n ? tracked_sum / static_cast<double>(tracked_n) : 0.0;
  return s;
}

class Presets {
 public:
  bool available() const { return data::verify_mnist_dir(ORFIT_MNIST_DIR).empty(); }

  Summary run(const std::string& name) {
    harness::ExperimentConfig cfg =
        harness::load_config(std::string(ORFIT_CONFIG_DIR) + "/" + name + ".json");
    cfg.mnist_dir = ORFIT_MNIST_DIR;
    if (!data_) {
      data_ = harness::load_dataset(cfg);
    }
    return summarize(cfg, harness::run_experiment(cfg, *data_));
  }

 private:
  std::optional<harness::Dataset> data_;
};

Presets& presets() {
  static Presets p;
  return p;
}

const char* kNoData = "MNIST not found in " ORFIT_MNIST_DIR " (run `orfit fetch-data --dir <dir>`)";

Outcome criterion_8() {
  if (!presets().available()) {
    return {false, kNoData};
  }
  const Summary ipca = presets().run("restricted_orfit_ipca");
  const Summary greedy = presets().run("restricted_greedy");
  const Summary sgd = presets().run("restricted_one_step_sgd");
  const Summary random = presets().run("restricted_orfit_random");
  const Summary latest = presets().run("restricted_orfit_latest");
  const std::size_t failures =
      ipca.failures + greedy.failures + sgd.failures + random.failures + latest.failures;
  const bool a = ipca.final_test < greedy.final_test && ipca.final_test < sgd.final_test;
  const bool b = ipca.tracked_after < sgd.tracked_after &&
                 ipca.tracked_after < greedy.tracked_after &&
                 ipca.tracked_after < random.tracked_after &&
                 ipca.tracked_after < latest.tracked_after;
  std::ostringstream d;
  d << "(a) " << (a ? "ok" : "FAILED") << " final test RMSE ipca=" << fmt(ipca.final_test)
    << " greedy=" << fmt(greedy.final_test) << " one-step-sgd=" << fmt(sgd.final_test)
    << "; (b) " << (b ? "ok" : "FAILED") << " mean tracked err after learned ipca="
    << fmt(ipca.tracked_after) << " one-step-sgd=" << fmt(sgd.tracked_after)
    << " greedy=" << fmt(greedy.tracked_after) << " random=" << fmt(random.tracked_after)
    << " latest=" << fmt(latest.tracked_after) << "; seed failures=" << failures;
  return {a && b && failures == 0, d.str()};
}

Outcome criterion_9() {
  if (!presets().available()) {
    return {false, kNoData};
  }
  const Summary orfit = presets().run("unrestricted_orfit");
  const Summary sgd = presets().run("unrestricted_sgd");
  const Summary one_step = presets().run("unrestricted_one_step_sgd");
  const std::size_t failures = orfit.failures + sgd.failures + one_step.failures;
  const bool a_orfit = orfit.max_final_train <= 1e-4;
  const bool a_sgd = sgd.max_final_train <= 1e-3;
  const double gap = std::abs(orfit.final_test - sgd.final_test) / sgd.final_test;
  const bool b = gap <= 0.10;
  const bool c = orfit.max_tracked_after <= 1e-6 &&
                 one_step.final_tracked >= 100.0 * std::max(orfit.final_tracked, 1e-6);
  std::ostringstream d;
  d << "(a) ORFit " << (a_orfit ? "ok" : "FAILED") << " max final train RMSE="
    << fmt(orfit.max_final_train) << " (tol 1e-4), SGD " << (a_sgd ? "ok" : "FAILED")
    << " max final train RMSE=" << fmt(sgd.max_final_train) << " (tol 1e-3); (b) "
    << (b ? "ok" : "FAILED") << " test RMSE ORFit=" << fmt(orfit.final_test)
    << " SGD=" << fmt(sgd.final_test) << " rel gap=" << fmt(gap) << " (tol 0.1); (c) "
    << (c ? "ok" : "FAILED") << " ORFit max tracked err after learned="
    << fmt(orfit.max_tracked_after) << " one-step-sgd final tracked err="
    << fmt(one_step.final_tracked) << "; seed failures=" << failures;
  return {a_orfit && a_sgd && b && c && failures == 0, d.str()};
}

Outcome criterion_10() {
  const harness::BenchReport r = harness::run_bench(harness::BenchConfig{});
  std::ostringstream d;
  d << "drift=" << fmt(r.drift) << " (<= 2, steady-state " << fmt(r.steady_drift)
    << ") ratio growth=" << fmt(r.ratio_growth) << " (>= " << fmt(r.ratio_growth_required)
    << ")";
  for (const harness::BenchPoint& pt : r.points) {
    d << " p=" << pt.p << ":rls/orfit=" << fmt(pt.ratio);
  }
  return {r.drift_ok() && r.ratio_ok(), d.str()};
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;  // 0 = no runtime bound
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ORFit equals EW-RLS (lambda=0), P is the complement projector", 5.0, criterion_1},
      {2, "ORFit iterate is the min-norm interpolant", 5.0, criterion_2},
      {3, "no drift on seen samples, current sample fit", 0.0, criterion_3},
      {4, "multi-pass SGD converges to the ORFit solution", 60.0, criterion_4},
      {5, "ORFit equals NTK-RLS on a tanh MLP", 10.0, criterion_5},
      {6, "EW-RLS recursion equals the closed form", 0.0, criterion_6},
      {7, "IPCA summary is exact on orthogonal residuals", 0.0, criterion_7},
      {8, "Rotated-MNIST memory-restricted ordering", 120.0, criterion_8},
      {9, "Rotated-MNIST unrestricted interpolation", 600.0, criterion_9},
      {10, "step-time benchmark", 0.0, criterion_10},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    const bool passed = o.passed && in_time;
    failed += passed ? 0 : 1;
    std::string budget;
    if (c.budget_s > 0.0) {
      budget = in_time ? " (< " + fmt(c.budget_s) + "s)" : " (over the " + fmt(c.budget_s) + "s budget)";
    }
    std::printf("%s criterion %d: %s | %s | %.2fs%s\n", passed ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, budget.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
