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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "orfit/baselines.hpp"
#include "orfit/data/stream.hpp"
#include "orfit/learner.hpp"
#include "orfit/models.hpp"

namespace orfit::harness {

enum class DatasetKind { kRotatedMnist, kSynthetic };
enum class LearnerKind { kOrfit, kEwrls, kNtkrls, kBaseline };

std::string_view dataset_kind_name(DatasetKind kind);
std::string_view learner_kind_name(LearnerKind kind);

/// One experiment. JSON schema (every field optional except where noted):
///
///   {
///     "dataset": "rotated_mnist" | "synthetic",
///     "mnist_dir": "data/mnist",
///     "train_count": 100,
///     "data_seed": 0,
///     "synthetic": {"dim": 64, "count": 32, "test_count": 100, "seed": 0,
///                   "kind": "gaussian_linear" | "gaussian_mlp", "teacher_hidden": [16]},
///     "model": {"kind": "linear" | "mlp", "hidden": [32]},
///     "learner": "orfit" | "ewrls" | "ntkrls" | "baseline",
///     "memory": {"policy": "ipca" | "random_keep" | "latest_keep" | "unbounded" | "none",
///                "m": 10, "rng_seed": 0},
///     "rls": {"lambda": 0.0},
///     "baseline": {"kind": "greedy" | "one_step_sgd" | "ogd" | "sgd_multipass",
///                  "step_size": 0.1, "inner_iters": 10, "epochs": 1,
///                  "shuffle": true, "shuffle_seed": 0,
///                  "grad_tolerance": 0.0, "max_iterations": 0},
///     "seeds": [0, 1, 2],                      (required, non-empty)
///     "tracked_sample_index": 16,              (1-based stream position)
///     "init_scale": 0.01,
///     "output": "metrics.csv",
///     "timing": false,
///     "threads": 0
///   }
///
/// The data stream depends on data_seed only; each entry of `seeds` draws a
/// fresh w0 ~ N(0, init_scale^2 I).
struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::kRotatedMnist;
  std::filesystem::path mnist_dir = "data/mnist";
  std::size_t train_count = 100;
  std::uint64_t data_seed = 0;
  data::SyntheticSpec synthetic{};

  ModelKind model_kind = ModelKind::kLinear;
  std::vector<std::size_t> model_hidden{};

  LearnerKind learner = LearnerKind::kOrfit;
  MemoryPolicy memory{MemoryKind::kIpca, 10, 0};
  double rls_lambda = 0.0;
  BaselineConfig baseline{};

  std::vector<std::uint64_t> seeds{};
  std::size_t tracked_sample_index = 16;
  double init_scale = 0.01;
  std::filesystem::path output{};
  bool timing = false;   // fill wall_micros; off keeps output byte-reproducible
  std::size_t threads = 0;  // 0 = hardware concurrency

  /// Model for inputs of length `input_dim`.
  ModelSpec model(std::size_t input_dim) const;

  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

/// Throws ConfigError for unknown keys, wrong types or invalid values.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ExperimentConfig& cfg);

}  // namespace orfit::harness
