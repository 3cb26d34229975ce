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

#include "orfit/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "orfit/error.hpp"
#include "orfit/learner.hpp"
#include "orfit/linalg/ops.hpp"

namespace orfit {

namespace {

constexpr double kDivergenceNorm = 1e12;

}  // namespace

std::string_view baseline_kind_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kGreedy:
      return "greedy";
    case BaselineKind::kOneStepSgd:
      return "one_step_sgd";
    case BaselineKind::kOgd:
      return "ogd";
    case BaselineKind::kSgdMultipass:
      return "sgd_multipass";
  }
  return "unknown";
}

BaselineKind parse_baseline_kind(std::string_view name) {
  for (BaselineKind k : {BaselineKind::kGreedy, BaselineKind::kOneStepSgd, BaselineKind::kOgd,
                         BaselineKind::kSgdMultipass}) {
    if (baseline_kind_name(k) == name) {
      return k;
    }
  }
  throw ConfigError("unknown baseline '" + std::string(name) + "'");
}

void BaselineConfig::validate() const {
  if ((kind == BaselineKind::kOgd || kind == BaselineKind::kSgdMultipass) && !(step_size > 0.0)) {
    throw ConfigError("baseline: step_size must be positive");
  }
  if (kind == BaselineKind::kOgd && inner_iters == 0) {
    throw ConfigError("baseline: inner_iters must be positive");
  }
  if (grad_tolerance < 0.0) {
    throw ConfigError("baseline: grad_tolerance must be non-negative");
  }
}

double GreedyPredictor::predict(const DenseVector& x) const {
  if (!last_) {
    throw Uninitialized("greedy: no datapoint seen yet");
  }
  return greedy_predict(*last_, x);
}

double greedy_predict(double last_label, const DenseVector& /*x*/) { return last_label; }

DenseVector one_step_sgd_step(const DenseVector& w, const ModelSpec& model, const LossSpec& loss,
                              const StreamSample& sample) {
  OrfitState state = OrfitState::initial(w, MemoryPolicy{MemoryKind::kNone});
  return orfit_step(std::move(state), model, loss, sample).w;
}

OgdResult ogd_step(const DenseVector& w, std::vector<DenseVector> basis, const ModelSpec& model,
                   const LossSpec& loss, const StreamSample& sample, const BaselineConfig& cfg) {
  cfg.validate();
  DenseVector current = w;
  for (std::size_t it = 0; it < cfg.inner_iters; ++it) {
    const LossAndGradient lg = loss_and_grad(loss, model, current, sample.x, sample.y);
    const DenseVector g_tilde = project_onto_complement(lg.gradient, basis);
    axpy(-cfg.step_size, g_tilde, current);
  }
  if (auto v = gram_schmidt_append(basis, gradient(model, current, sample.x))) {
    basis.push_back(std::move(*v));
  }
  return {std::move(current), std::move(basis)};
}

double full_gradient_norm(std::span<const StreamSample> dataset, const ModelSpec& model,
                          const LossSpec& loss, const DenseVector& w) {
  DenseVector total(w.size());
  for (const StreamSample& s : dataset) {
    total += loss_and_grad(loss, model, w, s.x, s.y).gradient;
  }
  return norm(total);
}

SgdResult sgd_multipass(std::span<const StreamSample> dataset, const ModelSpec& model,
                        const LossSpec& loss, const BaselineConfig& cfg, const DenseVector& w0,
                        const std::function<void(const SgdProgress&)>& on_epoch) {
  cfg.validate();
  DenseVector w = w0;
  SgdResult result{w0, 0, 0, 0.0};
  if (dataset.empty()) {
    return result;
  }
  std::mt19937_64 rng(cfg.shuffle_seed);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t cap = cfg.max_iterations;

  std::size_t iterations = 0;
  std::size_t epoch = 0;
  double grad_norm = 0.0;
  bool done = cfg.epochs == 0;
  while (!done) {
    if (cfg.shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
    }
    for (std::size_t idx : order) {
      const StreamSample& s = dataset[idx];
      const LossAndGradient lg = loss_and_grad(loss, model, w, s.x, s.y);
      axpy(-cfg.step_size, lg.gradient, w);
      ++iterations;
      if (cap != 0 && iterations >= cap) {
        break;
      }
    }
    ++epoch;
    if (!(norm(w) <= kDivergenceNorm)) {
      throw Divergence("sgd_multipass: |w| exceeded 1e12 at epoch " + std::to_string(epoch) +
                       " (step size too large)");
    }
    const bool need_grad = cfg.grad_tolerance > 0.0 || static_cast<bool>(on_epoch);
    if (need_grad) {
      grad_norm = full_gradient_norm(dataset, model, loss, w);
    }
    if (on_epoch) {
      on_epoch(SgdProgress{epoch, iterations, grad_norm, w});
    }
    done = epoch >= cfg.epochs || (cfg.grad_tolerance > 0.0 && grad_norm < cfg.grad_tolerance) ||
           (cap != 0 && iterations >= cap);
  }
  if (cfg.grad_tolerance == 0.0 && !on_epoch) {
    grad_norm = full_gradient_norm(dataset, model, loss, w);
  }
  return SgdResult{std::move(w), epoch, iterations, grad_norm};
}

}  // namespace orfit
