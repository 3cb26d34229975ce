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
#include <random>

#include "doctest.h"
#include "orfit/data/stream.hpp"
#include "orfit/error.hpp"
#include "orfit/learner.hpp"
#include "orfit/linalg/ops.hpp"
#include "test_util.hpp"

using namespace orfit;

namespace {

const LossSpec kLoss;

std::vector<StreamSample> gaussian_stream(std::size_t p, std::size_t k, std::uint64_t seed) {
  return data::synthetic_stream({p, k, 0, seed, data::SyntheticKind::kGaussianLinear, {}}).samples;
}

OrfitState run(OrfitState st, const ModelSpec& model, const std::vector<StreamSample>& stream,
               std::size_t upto) {
  for (std::size_t i = 0; i < upto; ++i) {
    st = orfit_step(std::move(st), model, kLoss, stream[i]);
  }
  return st;
}

const MemoryPolicy kUnbounded{MemoryKind::kUnbounded, 0, 0};

}  // namespace

TEST_CASE("orfit hand-worked two-step example") {
  const ModelSpec lin = ModelSpec::linear(2);
  OrfitState st = OrfitState::initial(DenseVector(2), kUnbounded);
  st = orfit_step(std::move(st), lin, kLoss, {DenseVector{1, 0}, 2.0, 0});
  CHECK(st.last_eta == 1.0);
  CHECK(st.w == DenseVector{2, 0});
  REQUIRE(st.basis_size() == 1);
  CHECK(st.basis()[0] == DenseVector{1, 0});

  st = orfit_step(std::move(st), lin, kLoss, {DenseVector{1, 1}, 3.0, 1});
  CHECK(st.last_eta == 1.0);
  CHECK(st.w == DenseVector{2, 1});
  CHECK(st.step == 2);
  const std::vector<StreamSample> hist{{DenseVector{1, 0}, 2.0, 0}, {DenseVector{1, 1}, 3.0, 1}};
  CHECK(predictions_on(hist, lin, st.w) == std::vector<double>{2, 3});
  // Independent oracle: pseudoinverse solution.
  Eigen::MatrixXd x(2, 2);
  x << 1, 0, 1, 1;
  const Eigen::VectorXd w = x.completeOrthogonalDecomposition().solve(Eigen::Vector2d(2, 3));
  CHECK(relative_error_inf(st.w, testing::from_eigen(w)) <= 1e-15);
}

TEST_CASE("re-streamed consistent sample is a no-op") {
  const ModelSpec lin = ModelSpec::linear(2);
  OrfitState st = OrfitState::initial(DenseVector(2), kUnbounded);
  st = orfit_step(std::move(st), lin, kLoss, {DenseVector{1, 0}, 2.0, 0});
  const DenseVector before = st.w;
  st = orfit_step(std::move(st), lin, kLoss, {DenseVector{1, 0}, 2.0, 1});
  CHECK(st.w == before);
  CHECK(st.basis_size() == 1);
  CHECK(st.step == 2);
}

TEST_CASE("contradicting sample in the span raises InconsistentStream") {
  const ModelSpec lin = ModelSpec::linear(2);
  OrfitState st = OrfitState::initial(DenseVector(2), kUnbounded);
  st = orfit_step(std::move(st), lin, kLoss, {DenseVector{1, 0}, 2.0, 0});
  CHECK_THROWS_AS(orfit_step(st, lin, kLoss, {DenseVector{2, 0}, 5.0, 1}), InconsistentStream);
}

TEST_CASE("orfit_step rejects mismatched lengths") {
  const ModelSpec lin = ModelSpec::linear(2);
  const OrfitState st = OrfitState::initial(DenseVector(2), kUnbounded);
  CHECK_THROWS_AS(orfit_step(st, lin, kLoss, {DenseVector{1, 0, 0}, 1.0, 0}), ContractViolation);
  CHECK_THROWS_AS(orfit_step(st, ModelSpec::linear(3), kLoss, {DenseVector{1, 0, 0}, 1.0, 0}),
                  ContractViolation);
}

TEST_CASE("memory policy validation and names") {
  CHECK_THROWS_AS((MemoryPolicy{MemoryKind::kIpca, 0, 0}.validate()), ConfigError);
  CHECK_THROWS_AS((MemoryPolicy{MemoryKind::kRandomKeep, 0, 0}.validate()), ConfigError);
  CHECK_NOTHROW((MemoryPolicy{MemoryKind::kUnbounded, 0, 0}.validate()));
  for (MemoryKind k : {MemoryKind::kIpca, MemoryKind::kRandomKeep, MemoryKind::kLatestKeep,
                       MemoryKind::kUnbounded, MemoryKind::kNone}) {
    CHECK(parse_memory_kind(memory_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_memory_kind("lru"), ConfigError);
}

TEST_CASE("unbounded ORFit preserves every earlier prediction") {
  const std::size_t p = 64;
  const ModelSpec lin = ModelSpec::linear(p);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto stream = gaussian_stream(p, 32, seed);
    OrfitState st = OrfitState::initial(init_parameters(lin, seed, 0.01), kUnbounded);
    std::vector<double> before;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      st = orfit_step(std::move(st), lin, kLoss, stream[i]);
      const auto after = predictions_on(std::span(stream).first(i + 1), lin, st.w);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(std::abs(after[k] - before[k]) <= 1e-8 * (1.0 + std::abs(stream[k].y)));
        CHECK(std::abs(after[k] - stream[k].y) <= 1e-8 * (1.0 + std::abs(stream[k].y)));
      }
      CHECK(std::abs(after[i] - stream[i].y) <= 1e-8 * (1.0 + std::abs(stream[i].y)));
      before = after;
    }
  }
}

TEST_CASE("every policy fits the current sample") {
  const std::size_t p = 50;
  const ModelSpec lin = ModelSpec::linear(p);
  const auto stream = gaussian_stream(p, 30, 4);
  for (MemoryKind kind : {MemoryKind::kIpca, MemoryKind::kRandomKeep, MemoryKind::kLatestKeep,
                          MemoryKind::kUnbounded, MemoryKind::kNone}) {
    OrfitState st = OrfitState::initial(DenseVector(p), MemoryPolicy{kind, 5, 9});
    for (const StreamSample& s : stream) {
      st = orfit_step(std::move(st), lin, kLoss, s);
      CHECK(std::abs(predict(lin, st.w, s.x) - s.y) <= 1e-8 * (1.0 + std::abs(s.y)));
      if (kind != MemoryKind::kUnbounded) {
        CHECK(st.basis_size() <= 5);
      }
    }
  }
}

TEST_CASE("unbounded basis spans the inputs and stays orthogonal") {
  const std::size_t p = 40;
  const ModelSpec lin = ModelSpec::linear(p);
  const auto stream = gaussian_stream(p, 20, 5);
  const OrfitState st = run(OrfitState::initial(DenseVector(p), kUnbounded), lin, stream, 20);
  const auto basis = st.basis();
  REQUIRE(basis.size() == 20);
  for (const StreamSample& s : stream) {
    CHECK(norm(project_onto_complement(s.x, basis)) <= 1e-8 * norm(s.x));
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(std::abs(dot(basis[i], basis[j])) <= 1e-8 * norm(basis[i]) * norm(basis[j]));
    }
  }
}

TEST_CASE("policies agree before any truncation") {
  const std::size_t p = 30;
  const std::size_t m = 8;
  const ModelSpec lin = ModelSpec::linear(p);
  const auto stream = gaussian_stream(p, m, 6);
  const DenseVector w0 = init_parameters(lin, 6, 0.1);
  const DenseVector ref = run(OrfitState::initial(w0, kUnbounded), lin, stream, m).w;
  for (MemoryKind kind : {MemoryKind::kIpca, MemoryKind::kRandomKeep, MemoryKind::kLatestKeep}) {
    const DenseVector w = run(OrfitState::initial(w0, MemoryPolicy{kind, m, 1}), lin, stream, m).w;
    CHECK(relative_error_inf(w, ref) <= 1e-8);
  }
}

TEST_CASE("none policy is One-Step SGD along the raw gradient") {
  const std::size_t p = 10;
  const ModelSpec lin = ModelSpec::linear(p);
  const auto stream = gaussian_stream(p, 6, 7);
  OrfitState st = OrfitState::initial(DenseVector(p), MemoryPolicy{MemoryKind::kNone, 0, 0});
  DenseVector w(p);
  for (const StreamSample& s : stream) {
    st = orfit_step(std::move(st), lin, kLoss, s);
    // g~ = g = (f - y) x, eta = (f - y) / (x . g), so w - eta g = w - (f - y) x / |x|^2.
    const double r = dot(w, s.x) - s.y;
    axpy(-r / dot(s.x, s.x), s.x, w);
    CHECK(max_abs_diff(st.w, w) <= 1e-12 * norm_inf(w));
    CHECK(st.basis_size() == 0);
  }
}

TEST_CASE("prune_memory examples") {
  std::mt19937_64 rng(1);
  std::vector<DenseVector> ten;
  for (std::size_t i = 0; i < 10; ++i) {
    DenseVector v(11);
    v[i] = 1.0 + static_cast<double>(i);
    ten.push_back(v);
  }
  CHECK(prune_memory(ten, {MemoryKind::kLatestKeep, 10, 0}, rng) == ten);

  auto eleven = ten;
  DenseVector last(11);
  last[10] = 1.0;
  eleven.push_back(last);
  const auto latest = prune_memory(eleven, {MemoryKind::kLatestKeep, 10, 0}, rng);
  CHECK(latest == std::vector<DenseVector>(eleven.begin() + 1, eleven.end()));

  std::mt19937_64 r1(42);
  std::mt19937_64 r2(42);
  const auto a = prune_memory(eleven, {MemoryKind::kRandomKeep, 10, 0}, r1);
  const auto b = prune_memory(eleven, {MemoryKind::kRandomKeep, 10, 0}, r2);
  CHECK(a.size() == 10);
  CHECK(a == b);

  CHECK_THROWS_AS(prune_memory(eleven, {MemoryKind::kLatestKeep, 0, 0}, rng), ConfigError);
  CHECK_THROWS_AS(prune_memory(eleven, {MemoryKind::kIpca, 10, 0}, rng), ConfigError);
}

TEST_CASE("random_keep draws each subset uniformly") {
  std::vector<DenseVector> four;
  for (std::size_t i = 0; i < 4; ++i) {
    DenseVector v(4);
    v[i] = 1.0;
    four.push_back(v);
  }
  std::mt19937_64 rng(3);
  std::vector<int> dropped(4, 0);
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const auto kept = prune_memory(four, {MemoryKind::kRandomKeep, 3, 0}, rng);
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::find(kept.begin(), kept.end(), four[i]) == kept.end()) {
        ++dropped[i];
      }
    }
  }
  for (int d : dropped) {
    CHECK(std::abs(d - trials / 4) < 120);  // ~4.4 sigma of a binomial(4000, 1/4)
  }
}

TEST_CASE("predictions_on examples") {
  const ModelSpec lin = ModelSpec::linear(2);
  CHECK(predictions_on({}, lin, DenseVector{1, 1}).empty());
  const std::vector<StreamSample> hist{{DenseVector{1, 0}, 0, 0}, {DenseVector{1, 1}, 0, 1}};
  CHECK(predictions_on(hist, lin, DenseVector{2, 1}) == std::vector<double>{2, 3});
  CHECK(predictions_on(std::span(hist).first(1), lin, DenseVector{-4, 9}) ==
        std::vector<double>{-4});
}

TEST_CASE("nonlinear ORFit fits the linearized prediction") {
  const ModelSpec net = ModelSpec::mlp(6, {12});
  const auto stream =
      data::synthetic_stream({6, 15, 0, 8, data::SyntheticKind::kGaussianMlp, {8}}).samples;
  OrfitState st = OrfitState::initial(init_parameters(net, 8, 1.0), kUnbounded);
  for (const StreamSample& s : stream) {
    const PredictionAndGradient pg = predict_with_gradient(net, st.w, s.x);
    const DenseVector w_prev = st.w;
    st = orfit_step(std::move(st), net, kLoss, s);
    const double linearized = pg.value + dot(pg.gradient, st.w - w_prev);
    CHECK(std::abs(linearized - s.y) <= 1e-8 * (1.0 + std::abs(s.y)));
  }
}
