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

#include "orfit/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "orfit/data/stream.hpp"
#include "orfit/error.hpp"
#include "orfit/learner.hpp"
#include "orfit/rls.hpp"

namespace orfit::harness {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double micros_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
}

std::vector<StreamSample> stream_for(std::size_t p, std::size_t k, std::uint64_t seed) {
  return data::synthetic_stream({p, k, 0, seed, data::SyntheticKind::kGaussianLinear, {}}).samples;
}

// Per-step ORFit-IPCA wall time, minimum over repeats.
std::vector<double> orfit_step_times(const std::vector<StreamSample>& stream, std::size_t m,
                                     std::size_t repeats, std::uint64_t seed) {
  const std::size_t p = stream.front().x.size();
  const ModelSpec model = ModelSpec::linear(p);
  std::vector<double> best(stream.size(), 1e300);
  for (std::size_t r = 0; r < repeats; ++r) {
    OrfitState st = OrfitState::initial(init_parameters(model, seed, 0.01),
                                        MemoryPolicy{MemoryKind::kIpca, m, 0});
    for (std::size_t k = 0; k < stream.size(); ++k) {
      const auto t0 = Clock::now();
      st = orfit_step(std::move(st), model, LossSpec{}, stream[k]);
      best[k] = std::min(best[k], micros_since(t0));
    }
  }
  return best;
}

std::vector<double> rls_step_times(const std::vector<StreamSample>& stream, std::size_t repeats,
                                   std::uint64_t seed) {
  const std::size_t p = stream.front().x.size();
  std::vector<double> best(stream.size(), 1e300);
  for (std::size_t r = 0; r < repeats; ++r) {
    RlsState st = RlsState::initial(init_parameters(ModelSpec::linear(p), seed, 0.01), 0.0);
    for (std::size_t k = 0; k < stream.size(); ++k) {
      const auto t0 = Clock::now();
      st = ewrls_step(std::move(st), stream[k].x, stream[k].y);
      best[k] = std::min(best[k], micros_since(t0));
    }
  }
  return best;
}

}  // namespace

std::string BenchReport::format() const {
  std::string out = "p,orfit_median_us,ewrls_median_us,ratio\n";
  char buf[160];
  for (const BenchPoint& pt : points) {
    std::snprintf(buf, sizeof buf, "%zu,%.3f,%.3f,%.3f\n", pt.p, pt.orfit_median_us,
                  pt.rls_median_us, pt.ratio);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%s drift %.3f (limit 2.0; after first window %.3f)\n",
                drift_ok() ? "PASS" : "FAIL", drift, steady_drift);
  out += buf;
  std::snprintf(buf, sizeof buf, "%s ratio_growth %.3f (required %.1f)\n",
                ratio_ok() ? "PASS" : "FAIL", ratio_growth, ratio_growth_required);
  out += buf;
  return out;
}

BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.p_list.empty() || cfg.m == 0 || cfg.repeats == 0 || cfg.ratio_steps == 0) {
    throw ConfigError("bench: p list, m, repeats and ratio_steps must be non-empty/positive");
  }
  BenchReport report;

  const std::size_t drift_steps = std::min(cfg.orfit_steps, cfg.drift_p);
  if (drift_steps < 20) {
    throw ConfigError("bench: the drift stream needs at least 20 steps");
  }
  const std::vector<double> drift_times =
      orfit_step_times(stream_for(cfg.drift_p, drift_steps, cfg.seed), cfg.m, cfg.repeats, cfg.seed);
  for (std::size_t start = 0; start + 10 <= drift_times.size(); start += 10) {
    report.drift_window_medians_us.push_back(median(
        std::vector<double>(drift_times.begin() + start, drift_times.begin() + start + 10)));
  }
  report.drift = *std::max_element(report.drift_window_medians_us.begin(),
                                   report.drift_window_medians_us.end()) /
                 report.drift_window_medians_us.front();
  const auto& w = report.drift_window_medians_us;
  report.steady_drift = w.size() < 2 ? 1.0
                                     : *std::max_element(w.begin() + 1, w.end()) /
                                           *std::min_element(w.begin() + 1, w.end());

  for (std::size_t p : cfg.p_list) {
    const std::size_t steps = std::min(cfg.ratio_steps, p);
    const auto stream = stream_for(p, steps, cfg.seed);
    BenchPoint pt;
    pt.p = p;
    pt.orfit_median_us = median(orfit_step_times(stream, cfg.m, cfg.repeats, cfg.seed));
    pt.rls_median_us = median(rls_step_times(stream, cfg.repeats, cfg.seed));
    pt.ratio = pt.rls_median_us / pt.orfit_median_us;
    report.points.push_back(pt);
  }
  const BenchPoint& first = report.points.front();
  const BenchPoint& last = report.points.back();
  report.ratio_growth = last.ratio / first.ratio;
  report.ratio_growth_required = last.p >= 16 * first.p ? 5.0 : 1.0;
  return report;
}

}  // namespace orfit::harness
