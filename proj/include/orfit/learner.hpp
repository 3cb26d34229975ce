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

// Orthogonal recursive fitting: one projected gradient step per sample with
// the step size that makes the model interpolate the new sample, while the
// projection keeps predictions on earlier samples fixed (exactly, for linear
// models). The directions to protect live in a basis memory whose size is
// governed by a MemoryPolicy.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "orfit/ipca.hpp"
#include "orfit/linalg/dense.hpp"
#include "orfit/models.hpp"
#include "orfit/sample.hpp"

namespace orfit {

enum class MemoryKind {
  kIpca,        // rank-m SVD summary of the basis
  kRandomKeep,  // keep m uniformly chosen basis vectors
  kLatestKeep,  // keep the m most recent basis vectors
  kUnbounded,   // keep every basis vector
  kNone,        // empty basis: the One-Step SGD baseline
};

struct MemoryPolicy {
  MemoryKind kind = MemoryKind::kUnbounded;
  std::size_t m = 0;  // ignored for kUnbounded / kNone
  std::uint64_t rng_seed = 0;  // kRandomKeep only

  /// Throws ConfigError when a bounded policy has m < 1.
  void validate() const;
  bool bounded() const;

  friend bool operator==(const MemoryPolicy&, const MemoryPolicy&) = default;
};

std::string_view memory_kind_name(MemoryKind kind);
/// Inverse of memory_kind_name; throws ConfigError on unknown names.
MemoryKind parse_memory_kind(std::string_view name);

/// Explicit list of mutually orthogonal, unnormalized basis vectors.
struct BasisList {
  std::vector<DenseVector> vectors;
  std::mt19937_64 rng;
};

/// Relative threshold on |projected grad f| / |grad f| below which the new
/// sample adds no new direction.
inline constexpr double kDirectionTolerance = 1e-10;
/// Relative residual |f - y| / (1 + |y|) accepted as "already fit".
inline constexpr double kFitTolerance = 1e-8;

struct OrfitState {
  DenseVector w;
  MemoryPolicy policy;
  std::variant<BasisList, SubspaceSummary> memory;
  std::size_t step = 0;
  double last_eta = 0.0;

  /// Fresh state at w0 with an empty memory for `policy`.
  static OrfitState initial(DenseVector w0, const MemoryPolicy& policy);

  /// Number of stored basis directions.
  std::size_t basis_size() const;
  /// Stored basis directions (unit-norm for kIpca, unnormalized otherwise).
  std::vector<DenseVector> basis() const;
};

/// One ORFit update on `sample`.
///
/// A sample whose projected model gradient vanishes is a no-op when it is
/// already fit to kFitTolerance and raises InconsistentStream otherwise. A
/// sample that is already fit but brings a new direction leaves w unchanged
/// and still extends the basis.
OrfitState orfit_step(OrfitState state, const ModelSpec& model, const LossSpec& loss,
                      const StreamSample& sample);

/// Shrinks `basis` to policy.m vectors (random subset or most recent).
std::vector<DenseVector> prune_memory(std::vector<DenseVector> basis, const MemoryPolicy& policy,
                                      std::mt19937_64& rng);

/// f(x_k; w) for every sample in `history`; verification helper only.
std::vector<double> predictions_on(std::span<const StreamSample> history, const ModelSpec& model,
                                   const DenseVector& w);

}  // namespace orfit
