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

#include "orfit/learner.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "orfit/error.hpp"
#include "orfit/linalg/ops.hpp"

namespace orfit {

void MemoryPolicy::validate() const {
  if (bounded() && m < 1) {
    throw ConfigError("memory policy '" + std::string(memory_kind_name(kind)) +
                      "' requires m >= 1");
  }
}

bool MemoryPolicy::bounded() const {
  return kind == MemoryKind::kIpca || kind == MemoryKind::kRandomKeep ||
         kind == MemoryKind::kLatestKeep;
}

std::string_view memory_kind_name(MemoryKind kind) {
  switch (kind) {
    case MemoryKind::kIpca:
      return "ipca";
    case MemoryKind::kRandomKeep:
      return "random_keep";
    case MemoryKind::kLatestKeep:
      return "latest_keep";
    case MemoryKind::kUnbounded:
      return "unbounded";
    case MemoryKind::kNone:
      return "none";
  }
  return "unknown";
}

MemoryKind parse_memory_kind(std::string_view name) {
  for (MemoryKind k : {MemoryKind::kIpca, MemoryKind::kRandomKeep, MemoryKind::kLatestKeep,
                       MemoryKind::kUnbounded, MemoryKind::kNone}) {
    if (memory_kind_name(k) == name) {
      return k;
    }
  }
  throw ConfigError("unknown memory policy '" + std::string(name) + "'");
}

OrfitState OrfitState::initial(DenseVector w0, const MemoryPolicy& policy) {
  policy.validate();
  const std::size_t p = w0.size();
  if (policy.kind == MemoryKind::kIpca) {
    return OrfitState{std::move(w0), policy, SubspaceSummary(p, policy.m)};
  }
  return OrfitState{std::move(w0), policy, BasisList{{}, std::mt19937_64(policy.rng_seed)}};
}

std::size_t OrfitState::basis_size() const {
  if (const auto* s = std::get_if<SubspaceSummary>(&memory)) {
    return s->rank();
  }
  return std::get<BasisList>(memory).vectors.size();
}

std::vector<DenseVector> OrfitState::basis() const {
  if (const auto* s = std::get_if<SubspaceSummary>(&memory)) {
    return {s->columns().begin(), s->columns().end()};
  }
  return std::get<BasisList>(memory).vectors;
}

namespace {

// Returns (projected g, projected grad f) against the current memory.
std::pair<DenseVector, DenseVector> project_both(const OrfitState& state, const DenseVector& g,
                                                 const DenseVector& grad_f) {
  if (state.policy.kind == MemoryKind::kNone) {
    return {g, grad_f};
  }
  if (const auto* s = std::get_if<SubspaceSummary>(&state.memory)) {
    // Second pass on the residual keeps the IPCA cross term at roundoff level.
    return {s->project_complement(g), s->project_complement(s->project_complement(grad_f))};
  }
  const auto& vectors = std::get<BasisList>(state.memory).vectors;
  DenseVector residual = project_onto_complement(grad_f, vectors);
  residual = project_onto_complement(residual, vectors);
  return {project_onto_complement(g, vectors), std::move(residual)};
}

void extend_memory(OrfitState& state, DenseVector direction) {
  switch (state.policy.kind) {
    case MemoryKind::kNone:
      return;
    case MemoryKind::kIpca:
      std::get<SubspaceSummary>(state.memory).append(direction);
      return;
    case MemoryKind::kUnbounded:
      std::get<BasisList>(state.memory).vectors.push_back(std::move(direction));
      return;
    case MemoryKind::kRandomKeep:
    case MemoryKind::kLatestKeep: {
      auto& list = std::get<BasisList>(state.memory);
      list.vectors.push_back(std::move(direction));
      list.vectors = prune_memory(std::move(list.vectors), state.policy, list.rng);
      return;
    }
  }
}

}  // namespace

OrfitState orfit_step(OrfitState state, const ModelSpec& model, const LossSpec& loss,
                      const StreamSample& sample) {
  if (sample.x.size() != model.input_dim()) {
    throw ContractViolation("orfit_step: sample input length " + std::to_string(sample.x.size()) +
                            " does not match model input_dim " +
                            std::to_string(model.input_dim()));
  }
  if (state.w.size() != model.param_dim()) {
    throw ContractViolation("orfit_step: parameter length does not match model param_dim");
  }

  PredictionAndGradient pg = predict_with_gradient(model, state.w, sample.x);
  const double f = pg.value;
  DenseVector g = pg.gradient;
  g *= loss.derivative(sample.y, f);

  auto [g_tilde, direction] = project_both(state, g, pg.gradient);

  const double grad_norm = norm(pg.gradient);
  const double dir_norm = norm(direction);
  const bool fits = std::abs(f - sample.y) <= kFitTolerance * (1.0 + std::abs(sample.y));
  state.step += 1;

  if (dir_norm <= kDirectionTolerance * grad_norm || dir_norm <= kZeroTolerance) {
    if (fits) {
      state.last_eta = 0.0;
      return state;
    }
    throw InconsistentStream("orfit_step: sample " + std::to_string(sample.index) +
                             " lies in the span of earlier gradients but is not fit (residual " +
                             std::to_string(f - sample.y) + ")");
  }

  const double g_tilde_norm = norm(g_tilde);
  const double denom = dot(pg.gradient, g_tilde);
  if (g_tilde_norm <= kZeroTolerance ||
      std::abs(denom) <= kDirectionTolerance * grad_norm * g_tilde_norm) {
    // Loss derivative is (numerically) zero: nothing to fit, but the new
    // direction still has to be protected from later updates.
    state.last_eta = 0.0;
  } else {
    const double eta = (f - sample.y) / denom;
    axpy(-eta, g_tilde, state.w);
    state.last_eta = eta;
  }
  extend_memory(state, std::move(direction));
  return state;
}

std::vector<DenseVector> prune_memory(std::vector<DenseVector> basis, const MemoryPolicy& policy,
                                      std::mt19937_64& rng) {
  if (policy.kind != MemoryKind::kRandomKeep && policy.kind != MemoryKind::kLatestKeep) {
    throw ConfigError("prune_memory: policy must be random_keep or latest_keep");
  }
  if (policy.m < 1) {
    throw ConfigError("prune_memory: m must be at least 1");
  }
  if (basis.size() <= policy.m) {
    return basis;
  }
  if (policy.kind == MemoryKind::kLatestKeep) {
    basis.erase(basis.begin(), basis.end() - static_cast<std::ptrdiff_t>(policy.m));
    return basis;
  }
  std::vector<DenseVector> kept;
  kept.reserve(policy.m);
  std::sample(std::make_move_iterator(basis.begin()), std::make_move_iterator(basis.end()),
              std::back_inserter(kept), policy.m, rng);
  return kept;
}

std::vector<double> predictions_on(std::span<const StreamSample> history, const ModelSpec& model,
                                   const DenseVector& w) {
  std::vector<double> out;
  out.reserve(history.size());
  for (const StreamSample& s : history) {
    out.push_back(predict(model, w, s.x));
  }
  return out;
}

}  // namespace orfit
