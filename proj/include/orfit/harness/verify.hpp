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

#include <functional>
#include <string>
#include <vector>

#include "orfit/learner.hpp"

namespace orfit::harness {

enum class VerifyScale { kQuick, kFull };

struct VerifyEntry {
  std::string name;
  bool passed = false;
  double max_error = 0.0;  // worst measured error over all seeds and steps
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;

  bool passed() const;
  /// One "PASS|FAIL name max_error=... tol=..." line per entry.
  std::string format() const;
};

using OrfitStepFn = std::function<OrfitState(OrfitState, const ModelSpec&, const LossSpec&,
                                             const StreamSample&)>;

// Individual property checks. Seeds: 2 at quick scale, 5 at full.
VerifyEntry check_orfit_matches_ewrls(VerifyScale scale);
VerifyEntry check_projection_identity(VerifyScale scale);
VerifyEntry check_min_norm(VerifyScale scale);
/// Prior-prediction drift and current-sample fit, for any step function.
VerifyEntry check_interpolation(VerifyScale scale, const OrfitStepFn& step = orfit_step);
VerifyEntry check_sgd_implicit_bias(VerifyScale scale);
VerifyEntry check_ntk_equivalence(VerifyScale scale);
VerifyEntry check_linearized_constraints(VerifyScale scale);
VerifyEntry check_gradient_fd(VerifyScale scale);
VerifyEntry check_ipca_exactness(VerifyScale scale);
VerifyEntry check_ewrls_closed_form(VerifyScale scale);

VerifyReport verify_suite(VerifyScale scale);

}  // namespace orfit::harness
