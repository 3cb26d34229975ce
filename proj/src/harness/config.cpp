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

#include "orfit/harness/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "orfit/error.hpp"

namespace orfit::harness {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::string_view where,
                  std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + ": expected an object");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) {
      known = known || key == a;
    }
    if (!known) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) {
    return;
  }
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "linear") return ModelKind::kLinear;
  if (s == "mlp") return ModelKind::kMlp;
  throw ConfigError("unknown model kind '" + std::string(s) + "'");
}

std::string_view model_kind_name(ModelKind k) {
  return k == ModelKind::kLinear ? "linear" : "mlp";
}

data::SyntheticKind parse_synthetic_kind(std::string_view s) {
  if (s == "gaussian_linear") return data::SyntheticKind::kGaussianLinear;
  if (s == "gaussian_mlp") return data::SyntheticKind::kGaussianMlp;
  throw ConfigError("unknown synthetic kind '" + std::string(s) + "'");
}

DatasetKind parse_dataset_kind(std::string_view s) {
  if (s == "rotated_mnist") return DatasetKind::kRotatedMnist;
  if (s == "synthetic") return DatasetKind::kSynthetic;
  throw ConfigError("unknown dataset '" + std::string(s) + "'");
}

LearnerKind parse_learner_kind(std::string_view s) {
  if (s == "orfit") return LearnerKind::kOrfit;
  if (s == "ewrls") return LearnerKind::kEwrls;
  if (s == "ntkrls") return LearnerKind::kNtkrls;
  if (s == "baseline") return LearnerKind::kBaseline;
  throw ConfigError("unknown learner '" + std::string(s) + "'");
}

}  // namespace

std::string_view dataset_kind_name(DatasetKind kind) {
  return kind == DatasetKind::kRotatedMnist ? "rotated_mnist" : "synthetic";
}

std::string_view learner_kind_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kOrfit: return "orfit";
    case LearnerKind::kEwrls: return "ewrls";
    case LearnerKind::kNtkrls: return "ntkrls";
    case LearnerKind::kBaseline: return "baseline";
  }
  return "?";
}

ModelSpec ExperimentConfig::model(std::size_t input_dim) const {
  return model_kind == ModelKind::kLinear ? ModelSpec::linear(input_dim)
                                          : ModelSpec::mlp(input_dim, model_hidden);
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) {
    throw ConfigError("config: at least one seed is required");
  }
  if (learner == LearnerKind::kOrfit) {
    memory.validate();
  }
  if (learner == LearnerKind::kBaseline) {
    baseline.validate();
  }
  if (learner == LearnerKind::kEwrls && model_kind != ModelKind::kLinear) {
    throw ConfigError("config: learner 'ewrls' requires the linear model");
  }
  if (!(rls_lambda >= 0.0 && rls_lambda <= 1.0)) {
    throw ConfigError("config: rls.lambda must lie in [0, 1]");
  }
  if (!(init_scale >= 0.0)) {
    throw ConfigError("config: init_scale must be non-negative");
  }
  if (model_kind == ModelKind::kMlp && model_hidden.empty()) {
    throw ConfigError("config: mlp model needs at least one hidden layer");
  }
  const std::size_t count =
      dataset == DatasetKind::kRotatedMnist ? train_count : synthetic.count;
  if (count == 0) {
    throw ConfigError("config: the training stream is empty");
  }
  if (tracked_sample_index < 1 || tracked_sample_index > count) {
    throw ConfigError("config: tracked_sample_index must lie in [1, " + std::to_string(count) +
                      "]");
  }
  if (dataset == DatasetKind::kSynthetic && synthetic.dim == 0) {
    throw ConfigError("config: synthetic.dim must be positive");
  }
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  require_keys(root, "config",
               {"dataset", "mnist_dir", "train_count", "data_seed", "synthetic", "model", "learner",
                "memory", "rls", "baseline", "seeds", "tracked_sample_index", "init_scale",
                "output", "timing", "threads"});

  ExperimentConfig cfg;
  std::string s;
  if (root.contains("dataset")) {
    read(root, "dataset", s);
    cfg.dataset = parse_dataset_kind(s);
  }
  std::string dir = cfg.mnist_dir.string();
  read(root, "mnist_dir", dir);
  cfg.mnist_dir = dir;
  read(root, "train_count", cfg.train_count);
  read(root, "data_seed", cfg.data_seed);

  if (root.contains("synthetic")) {
    const json& syn = root.at("synthetic");
    require_keys(syn, "synthetic", {"dim", "count", "test_count", "seed", "kind", "teacher_hidden"});
    read(syn, "dim", cfg.synthetic.dim);
    read(syn, "count", cfg.synthetic.count);
    read(syn, "test_count", cfg.synthetic.test_count);
    read(syn, "seed", cfg.synthetic.seed);
    read(syn, "teacher_hidden", cfg.synthetic.teacher_hidden);
    if (syn.contains("kind")) {
      read(syn, "kind", s);
      cfg.synthetic.kind = parse_synthetic_kind(s);
    }
  }
  if (root.contains("model")) {
    const json& model = root.at("model");
    require_keys(model, "model", {"kind", "hidden"});
    if (model.contains("kind")) {
      read(model, "kind", s);
      cfg.model_kind = parse_model_kind(s);
    }
    read(model, "hidden", cfg.model_hidden);
  }
  if (root.contains("learner")) {
    read(root, "learner", s);
    cfg.learner = parse_learner_kind(s);
  }
  if (root.contains("memory")) {
    const json& mem = root.at("memory");
    require_keys(mem, "memory", {"policy", "m", "rng_seed"});
    if (mem.contains("policy")) {
      read(mem, "policy", s);
      cfg.memory.kind = parse_memory_kind(s);
    }
    read(mem, "m", cfg.memory.m);
    read(mem, "rng_seed", cfg.memory.rng_seed);
  }
  if (root.contains("rls")) {
    require_keys(root.at("rls"), "rls", {"lambda"});
    read(root.at("rls"), "lambda", cfg.rls_lambda);
  }
  if (root.contains("baseline")) {
    const json& b = root.at("baseline");
    require_keys(b, "baseline",
                 {"kind", "step_size", "inner_iters", "epochs", "shuffle", "shuffle_seed",
                  "grad_tolerance", "max_iterations"});
    if (b.contains("kind")) {
      read(b, "kind", s);
      cfg.baseline.kind = parse_baseline_kind(s);
    }
    read(b, "step_size", cfg.baseline.step_size);
    read(b, "inner_iters", cfg.baseline.inner_iters);
    read(b, "epochs", cfg.baseline.epochs);
    read(b, "shuffle", cfg.baseline.shuffle);
    read(b, "shuffle_seed", cfg.baseline.shuffle_seed);
    read(b, "grad_tolerance", cfg.baseline.grad_tolerance);
    read(b, "max_iterations", cfg.baseline.max_iterations);
  }
  read(root, "seeds", cfg.seeds);
  read(root, "tracked_sample_index", cfg.tracked_sample_index);
  read(root, "init_scale", cfg.init_scale);
  std::string out;
  read(root, "output", out);
  cfg.output = out;
  read(root, "timing", cfg.timing);
  read(root, "threads", cfg.threads);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string dump_config(const ExperimentConfig& cfg) {
  json root;
  root["dataset"] = dataset_kind_name(cfg.dataset);
  root["mnist_dir"] = cfg.mnist_dir.string();
  root["train_count"] = cfg.train_count;
  root["data_seed"] = cfg.data_seed;
  root["synthetic"] = {
      {"dim", cfg.synthetic.dim},
      {"count", cfg.synthetic.count},
      {"test_count", cfg.synthetic.test_count},
      {"seed", cfg.synthetic.seed},
      {"kind", cfg.synthetic.kind == data::SyntheticKind::kGaussianLinear ? "gaussian_linear"
                                                                          : "gaussian_mlp"},
      {"teacher_hidden", cfg.synthetic.teacher_hidden}};
  root["model"] = {{"kind", model_kind_name(cfg.model_kind)}, {"hidden", cfg.model_hidden}};
  root["learner"] = learner_kind_name(cfg.learner);
  root["memory"] = {{"policy", memory_kind_name(cfg.memory.kind)},
                    {"m", cfg.memory.m},
                    {"rng_seed", cfg.memory.rng_seed}};
  root["rls"] = {{"lambda", cfg.rls_lambda}};
  root["baseline"] = {{"kind", baseline_kind_name(cfg.baseline.kind)},
                      {"step_size", cfg.baseline.step_size},
                      {"inner_iters", cfg.baseline.inner_iters},
                      {"epochs", cfg.baseline.epochs},
                      {"shuffle", cfg.baseline.shuffle},
                      {"shuffle_seed", cfg.baseline.shuffle_seed},
                      {"grad_tolerance", cfg.baseline.grad_tolerance},
                      {"max_iterations", cfg.baseline.max_iterations}};
  root["seeds"] = cfg.seeds;
  root["tracked_sample_index"] = cfg.tracked_sample_index;
  root["init_scale"] = cfg.init_scale;
  root["output"] = cfg.output.string();
  root["timing"] = cfg.timing;
  root["threads"] = cfg.threads;
  return root.dump(2);
}

}  // namespace orfit::harness
