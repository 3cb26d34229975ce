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

// Learner snapshots for checkpoint/resume.
//
// Layout: one line of JSON (the header, terminated by '\n') followed by a
// payload of IEEE-754 binary64 values in little-endian byte order:
//
//   w            param_dim values
//   basis[0..r)  r * param_dim values, one basis vector after another
//
// Header fields: format ("orfit-state"), version (1), param_dim, step,
// last_eta, policy {kind, m, rng_seed}, basis_count (r), sigma (IPCA only,
// r values), absorbed (IPCA only), rng_state (random_keep generator state as
// text, list policies only).

#pragma once

#include <filesystem>
#include <iosfwd>

#include "orfit/learner.hpp"

namespace orfit {

void write_checkpoint(const OrfitState& state, std::ostream& out);
OrfitState read_checkpoint(std::istream& in);

void save_checkpoint(const OrfitState& state, const std::filesystem::path& path);
/// Throws IngestionError when the file is missing, truncated or malformed.
OrfitState load_checkpoint(const std::filesystem::path& path);

}  // namespace orfit
