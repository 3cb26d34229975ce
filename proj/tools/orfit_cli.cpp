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

// orfit: run experiments, the verification suite, the data fetcher and the
// step-cost benchmark.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orfit/data/fetch.hpp"
#include "orfit/error.hpp"
#include "orfit/harness/bench.hpp"
#include "orfit/harness/config.hpp"
#include "orfit/harness/experiment.hpp"
#include "orfit/harness/metrics.hpp"
#include "orfit/harness/verify.hpp"
#include "orfit/linalg/kernels.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIngestion = 3;

struct RunArgs {
  std::string config;
  std::string out;
  std::vector<std::uint64_t> seeds;
  std::string mnist_dir;
  std::size_t threads = 0;
  bool timing = false;
};

int do_run(const RunArgs& args) {
  using namespace orfit::harness;
  ExperimentConfig cfg = load_config(args.config);
  if (!args.seeds.empty()) cfg.seeds = args.seeds;
  if (!args.mnist_dir.empty()) cfg.mnist_dir = args.mnist_dir;
  if (args.threads != 0) cfg.threads = args.threads;
  if (args.timing) cfg.timing = true;
  if (!args.out.empty()) cfg.output = args.out;
  if (cfg.output.empty()) {
    throw orfit::ConfigError("no output path: pass --out or set \"output\"");
  }
  cfg.validate();

  const ExperimentResult result = run_experiment(cfg);
  emit_metrics_csv(result.rows, cfg.output);
  for (const SeedFailure& f : result.failures) {
    std::fprintf(stderr, "seed %llu failed: %s\n", static_cast<unsigned long long>(f.seed),
                 f.message.c_str());
  }
  std::fprintf(stderr, "wrote %zu rows to %s\n", result.rows.size(), cfg.output.c_str());
  return result.failures.empty() ? kExitOk : kExitPropertyFailure;
}

int do_verify(const std::string& scale) {
  using namespace orfit::harness;
  const VerifyReport report =
      verify_suite(scale == "full" ? VerifyScale::kFull : VerifyScale::kQuick);
  std::fputs(report.format().c_str(), stdout);
  return report.passed() ? kExitOk : kExitPropertyFailure;
}

int do_fetch(const std::string& dir) {
  orfit::data::fetch_mnist(dir);
  const auto bad = orfit::data::verify_mnist_dir(dir);
  if (!bad.empty()) {
    throw orfit::IngestionError("checksum mismatch after fetch: " + bad.front());
  }
  std::printf("MNIST files in %s verified\n", dir.c_str());
  return kExitOk;
}

int do_bench(const orfit::harness::BenchConfig& cfg) {
  std::printf("simd: %s\n", orfit::kernels::isa_name(orfit::kernels::active().isa).data());
  const orfit::harness::BenchReport report = orfit::harness::run_bench(cfg);
  std::fputs(report.format().c_str(), stdout);
  return report.drift_ok() && report.ratio_ok() ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal recursive fitting toolkit"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run an experiment and write metrics CSV");
  run->add_option("--config", run_args.config, "Experiment JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_args.out, "Metrics CSV path (overrides \"output\")");
  run->add_option("--seeds", run_args.seeds, "Override seeds")->delimiter(',');
  run->add_option("--mnist-dir", run_args.mnist_dir, "Override mnist_dir");
  run->add_option("--threads", run_args.threads, "Override threads");
  run->add_flag("--timing", run_args.timing, "Record wall_micros");

  std::string scale = "quick";
  CLI::App* verify = app.add_subcommand("verify", "Run the property verification suite");
  verify->add_option("--scale", scale, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  std::string fetch_dir = "data/mnist";
  CLI::App* fetch = app.add_subcommand("fetch-data", "Download and checksum MNIST");
  fetch->add_option("--dir", fetch_dir, "Target directory");

  orfit::harness::BenchConfig bench_cfg;
  CLI::App* bench = app.add_subcommand("bench", "Per-step cost of ORFit-IPCA vs EW-RLS");
  bench->add_option("--p", bench_cfg.p_list, "Parameter dimensions")->delimiter(',');
  bench->add_option("--m", bench_cfg.m, "IPCA memory size");
  bench->add_option("--steps", bench_cfg.orfit_steps, "Drift stream length");
  bench->add_option("--repeats", bench_cfg.repeats, "Repetitions per measurement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return do_run(run_args);
    if (*verify) return do_verify(scale);
    if (*fetch) return do_fetch(fetch_dir);
    if (*bench) return do_bench(bench_cfg);
  } catch (const orfit::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const orfit::IngestionError& e) {
    std::fprintf(stderr, "ingestion error: %s\n", e.what());
    return kExitIngestion;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPropertyFailure;
  }
  return kExitOk;
}
