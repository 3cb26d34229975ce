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

#include <cstdint>
#include <string>
#include <vector>

#include "orfit/harness/config.hpp"
#include "orfit/harness/metrics.hpp"
#include "orfit/sample.hpp"

namespace orfit::harness {

struct Dataset {
  std::vector<StreamSample> train;
  std::vector<StreamSample> test;
  std::size_t input_dim = 0;
};

/// Builds the configured stream. Throws IngestionError / InsufficientData /
/// ConfigError from the data layer.
Dataset load_dataset(const ExperimentConfig& cfg);

struct SeedFailure {
  std::uint64_t seed;
  std::string message;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;  // seed order, then step order
  std::vector<SeedFailure> failures;
};

/// Rows of one seed: w0 ~ N(0, init_scale^2 I) from `seed`, one learner step
/// per training sample (one row per epoch for sgd_multipass), metrics after
/// every step. Learner errors propagate.
std::vector<MetricsRow> run_seed(const ExperimentConfig& cfg, const Dataset& data,
                                 std::uint64_t seed);

/// All seeds, concurrently up to cfg.threads, merged in seed order. A seed
/// that throws contributes the rows it produced before failing plus a
/// SeedFailure entry; remaining seeds still run.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& data);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace orfit::harness
