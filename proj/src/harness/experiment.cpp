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

#include "orfit/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>

#include "orfit/baselines.hpp"
#include "orfit/error.hpp"
#include "orfit/learner.hpp"
#include "orfit/rls.hpp"

namespace orfit::harness {

namespace {

using Clock = std::chrono::steady_clock;
using Predictor = std::function<double(const DenseVector&)>;

double rmse(std::span<const StreamSample> samples, const Predictor& predict) {
  if (samples.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const StreamSample& s : samples) {
    const double r = predict(s.x) - s.y;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(samples.size()));
}

class Recorder {
 public:
  Recorder(const ExperimentConfig& cfg, const Dataset& data, std::uint64_t seed,
           std::vector<MetricsRow>& rows)
      : cfg_(cfg), data_(data), seed_(seed), rows_(rows) {}

  void start() { t0_ = Clock::now(); }

  /// `seen` training samples count toward train_error.
  void record(std::size_t step, std::size_t seen, const Predictor& predict) {
    const auto elapsed = Clock::now() - t0_;
    const StreamSample& tracked = data_.train[cfg_.tracked_sample_index - 1];
    MetricsRow row;
    row.seed = seed_;
    row.step = step;
    row.train_error = rmse(std::span(data_.train).first(seen), predict);
    row.test_error = rmse(data_.test, predict);
    row.tracked_pred_error = std::abs(predict(tracked.x) - tracked.y);
    row.wall_micros =
        cfg_.timing ? std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() : 0;
    rows_.push_back(row);
  }

 private:
  const ExperimentConfig& cfg_;
  const Dataset& data_;
  std::uint64_t seed_;
  std::vector<MetricsRow>& rows_;
  Clock::time_point t0_{};
};

Predictor model_predictor(const ModelSpec& model, const DenseVector& w) {
  return [&model, &w](const DenseVector& x) { return predict(model, w, x); };
}

void run_seed_into(const ExperimentConfig& cfg, const Dataset& data, std::uint64_t seed,
                   std::vector<MetricsRow>& rows) {
  const ModelSpec model = cfg.model(data.input_dim);
  const LossSpec loss;
  const DenseVector w0 = init_parameters(model, seed, cfg.init_scale);
  Recorder rec(cfg, data, seed, rows);
  const std::size_t n = data.train.size();

  switch (cfg.learner) {
    case LearnerKind::kOrfit: {
      OrfitState st = OrfitState::initial(w0, cfg.memory);
      for (std::size_t k = 0; k < n; ++k) {
        rec.start();
        st = orfit_step(std::move(st), model, loss, data.train[k]);
        rec.record(k + 1, k + 1, model_predictor(model, st.w));
      }
      return;
    }
    case LearnerKind::kEwrls:
    case LearnerKind::kNtkrls: {
      RlsState st = RlsState::initial(w0, cfg.rls_lambda);
      for (std::size_t k = 0; k < n; ++k) {
        rec.start();
        st = cfg.learner == LearnerKind::kEwrls
                 ? ewrls_step(std::move(st), data.train[k].x, data.train[k].y)
                 : ntkrls_step(std::move(st), model, data.train[k].x, data.train[k].y);
        rec.record(k + 1, k + 1, model_predictor(model, st.w));
      }
      return;
    }
    case LearnerKind::kBaseline:
      break;
  }

  switch (cfg.baseline.kind) {
    case BaselineKind::kGreedy: {
      GreedyPredictor g;
      for (std::size_t k = 0; k < n; ++k) {
        rec.start();
        g.observe(data.train[k].y);
        rec.record(k + 1, k + 1, [&g](const DenseVector& x) { return g.predict(x); });
      }
      return;
    }
    case BaselineKind::kOneStepSgd: {
      DenseVector w = w0;
      for (std::size_t k = 0; k < n; ++k) {
        rec.start();
        w = one_step_sgd_step(w, model, loss, data.train[k]);
        rec.record(k + 1, k + 1, model_predictor(model, w));
      }
      return;
    }
    case BaselineKind::kOgd: {
      OgdResult r{w0, {}};
      for (std::size_t k = 0; k < n; ++k) {
        rec.start();
        r = ogd_step(r.w, std::move(r.basis), model, loss, data.train[k], cfg.baseline);
        rec.record(k + 1, k + 1, model_predictor(model, r.w));
      }
      return;
    }
    case BaselineKind::kSgdMultipass: {
      rec.start();
      sgd_multipass(data.train, model, loss, cfg.baseline, w0, [&](const SgdProgress& p) {
        rec.record(p.epoch, n, model_predictor(model, p.w));
        rec.start();
      });
      return;
    }
  }
}

}  // namespace

Dataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset == DatasetKind::kRotatedMnist) {
    data::StreamSplit split = data::build_rotated_mnist_stream(
        data::MnistFiles::in_directory(cfg.mnist_dir), cfg.train_count, cfg.data_seed);
    return {std::move(split.train), std::move(split.test), data::kImagePixels};
  }
  data::SyntheticStream syn = data::synthetic_stream(cfg.synthetic);
  return {std::move(syn.samples), std::move(syn.test), cfg.synthetic.dim};
}

std::vector<MetricsRow> run_seed(const ExperimentConfig& cfg, const Dataset& data,
                                 std::uint64_t seed) {
  std::vector<MetricsRow> rows;
  run_seed_into(cfg, data, seed, rows);
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& data) {
  cfg.validate();
  if (data.train.size() < cfg.tracked_sample_index) {
    throw ConfigError("tracked_sample_index exceeds the stream length");
  }
  const std::size_t count = cfg.seeds.size();
  std::vector<std::vector<MetricsRow>> per_seed(count);
  std::vector<std::optional<std::string>> errors(count);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        run_seed_into(cfg, data, cfg.seeds[i], per_seed[i]);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, count);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  ExperimentResult result;
  for (std::size_t i = 0; i < count; ++i) {
    result.rows.insert(result.rows.end(), per_seed[i].begin(), per_seed[i].end());
    if (errors[i]) {
      result.failures.push_back({cfg.seeds[i], *errors[i]});
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, load_dataset(cfg));
}

}  // namespace orfit::harness
