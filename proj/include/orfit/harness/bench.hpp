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
#include <string>
#include <vector>

namespace orfit::harness {

struct BenchConfig {
  std::vector<std::size_t> p_list{256, 4096};
  std::size_t m = 10;
  std::size_t drift_p = 784;
  std::size_t orfit_steps = 200;  // drift stream length (capped at drift_p)
  std::size_t ratio_steps = 20;   // timed steps per p for the RLS/ORFit ratio
  std::size_t repeats = 3;        // per-step time = min over repeats
  std::uint64_t seed = 0;
};

struct BenchPoint {
  std::size_t p = 0;
  double orfit_median_us = 0.0;
  double rls_median_us = 0.0;
  double ratio = 0.0;  // rls / orfit
};

struct BenchReport {
  std::vector<BenchPoint> points;
  std::vector<double> drift_window_medians_us;  // medians of consecutive 10-step windows
  double drift = 0.0;                           // max window median / first window median
  double steady_drift = 0.0;                    // max / min over windows after the first
  double ratio_growth = 0.0;                    // ratio(last p) / ratio(first p)
  double ratio_growth_required = 0.0;

  bool drift_ok() const { return drift <= 2.0; }
  bool ratio_ok() const { return ratio_growth >= ratio_growth_required; }
  std::string format() const;
};

/// Times ORFit-IPCA and EW-RLS (lambda = 0) steps on synthetic linear streams.
/// A 16x spread between the first and last p requires a 5x ratio growth;
/// narrower spreads only require growth above 1.
BenchReport run_bench(const BenchConfig& cfg);

}  // namespace orfit::harness
