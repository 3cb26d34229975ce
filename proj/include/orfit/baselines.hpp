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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orfit/linalg/dense.hpp"
#include "orfit/models.hpp"
#include "orfit/sample.hpp"

namespace orfit {

enum class BaselineKind { kGreedy, kOneStepSgd, kOgd, kSgdMultipass };

std::string_view baseline_kind_name(BaselineKind kind);
BaselineKind parse_baseline_kind(std::string_view name);

struct BaselineConfig {
  BaselineKind kind = BaselineKind::kGreedy;
  double step_size = 0.1;        // ogd, sgd_multipass
  std::size_t inner_iters = 10;  // ogd
  std::size_t epochs = 1;        // sgd_multipass
  std::uint64_t shuffle_seed = 0;
  bool shuffle = true;
  // sgd_multipass early stop: |sum_k grad l_k| below this after an epoch (0 disables)
  double grad_tolerance = 0.0;
  // sgd_multipass cap on per-sample updates (0 = epochs * K)
  std::size_t max_iterations = 0;

  /// Throws ConfigError when a required step size / count is not positive.
  void validate() const;
};

/// Predicts the most recent label for every input.
class GreedyPredictor {
 public:
  void observe(double y) { last_ = y; }
  /// Throws Uninitialized before the first observe().
  double predict(const DenseVector& x) const;

 private:
  std::optional<double> last_;
};

double greedy_predict(double last_label, const DenseVector& x);

/// Interpolating step size with an empty basis (ORFit with MemoryKind::kNone).
DenseVector one_step_sgd_step(const DenseVector& w, const ModelSpec& model, const LossSpec& loss,
                              const StreamSample& sample);

struct OgdResult {
  DenseVector w;
  std::vector<DenseVector> basis;
};

/// cfg.inner_iters fixed-step descents along the gradient projected off
/// `basis`, then grad f at the final w joins the basis by Gram-Schmidt.
OgdResult ogd_step(const DenseVector& w, std::vector<DenseVector> basis, const ModelSpec& model,
                   const LossSpec& loss, const StreamSample& sample, const BaselineConfig& cfg);

struct SgdProgress {
  std::size_t epoch;       // 1-based, completed epochs
  std::size_t iterations;  // per-sample updates so far
  double grad_norm;        // |sum_k grad l_k(w)|
  const DenseVector& w;
};

struct SgdResult {
  DenseVector w;
  std::size_t epochs_run;
  std::size_t iterations;
  double grad_norm;
};

/// Multi-pass SGD, one update per sample, order reshuffled every epoch from
/// cfg.shuffle_seed. Stops at the first of: cfg.epochs epochs, cfg.grad_tolerance,
/// cfg.max_iterations updates. `on_epoch` (optional) sees the iterate after each epoch.
/// Throws Divergence when |w| exceeds 1e12.
SgdResult sgd_multipass(std::span<const StreamSample> dataset, const ModelSpec& model,
                        const LossSpec& loss, const BaselineConfig& cfg, const DenseVector& w0,
                        const std::function<void(const SgdProgress&)>& on_epoch = {});

/// |sum_k grad l_k(w)| over the dataset.
double full_gradient_norm(std::span<const StreamSample> dataset, const ModelSpec& model,
                          const LossSpec& loss, const DenseVector& w);

}  // namespace orfit
