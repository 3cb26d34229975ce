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

#include "orfit/models.hpp"

#include <cmath>
#include <random>
#include <string>

#include "orfit/error.hpp"
#include "orfit/linalg/kernels.hpp"

namespace orfit {

namespace {

std::size_t count_params(ModelKind kind, std::size_t input_dim,
                         const std::vector<std::size_t>& hidden) {
  if (kind == ModelKind::kLinear) {
    return input_dim;
  }
  std::size_t total = 0;
  std::size_t in = input_dim;
  for (std::size_t h : hidden) {
    total += h * in + h;
    in = h;
  }
  return total + in + 1;
}

void check_dims(const ModelSpec& spec, const DenseVector& w, const DenseVector& x) {
  if (w.size() != spec.param_dim()) {
    throw ContractViolation("model: parameter length " + std::to_string(w.size()) +
                            " does not match param_dim " + std::to_string(spec.param_dim()));
  }
  if (x.size() != spec.input_dim()) {
    throw ContractViolation("model: input length " + std::to_string(x.size()) +
                            " does not match input_dim " + std::to_string(spec.input_dim()));
  }
}

// Forward pass through the MLP; activations[l] is the input to layer l.
double mlp_forward(const ModelSpec& spec, const DenseVector& w, const DenseVector& x,
                   std::vector<std::vector<double>>& activations) {
  const auto& k = kernels::active();
  activations.assign(1, x.values());
  const double* p = w.data();
  std::size_t in = spec.input_dim();
  for (std::size_t h : spec.hidden()) {
    std::vector<double> z(h);
    k.gemv(p, h, in, activations.back().data(), z.data());
    p += h * in;
    for (std::size_t j = 0; j < h; ++j) {
      z[j] = std::tanh(z[j] + p[j]);
    }
    p += h;
    activations.push_back(std::move(z));
    in = h;
  }
  return k.dot(p, activations.back().data(), in) + p[in];
}

DenseVector mlp_backward(const ModelSpec& spec, const DenseVector& w,
                         const std::vector<std::vector<double>>& activations) {
  const auto& hidden = spec.hidden();
  const std::size_t layers = hidden.size() + 1;

  std::vector<std::size_t> offsets(layers);
  std::vector<std::size_t> fan_in(layers);
  std::vector<std::size_t> fan_out(layers);
  std::size_t off = 0;
  std::size_t in = spec.input_dim();
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t out = l < hidden.size() ? hidden[l] : 1;
    offsets[l] = off;
    fan_in[l] = in;
    fan_out[l] = out;
    off += out * in + out;
    in = out;
  }

  DenseVector grad(spec.param_dim());
  std::vector<double> delta{1.0};
  for (std::size_t l = layers; l-- > 0;) {
    const std::vector<double>& a = activations[l];
    double* gw = grad.data() + offsets[l];
    double* gb = gw + fan_out[l] * fan_in[l];
    for (std::size_t o = 0; o < fan_out[l]; ++o) {
      for (std::size_t i = 0; i < fan_in[l]; ++i) {
        gw[o * fan_in[l] + i] = delta[o] * a[i];
      }
      gb[o] = delta[o];
    }
    if (l == 0) {
      break;
    }
    // delta for the previous layer: (W^T delta) * tanh'(z) with tanh' = 1 - a^2
    const double* wl = w.data() + offsets[l];
    std::vector<double> prev(fan_in[l], 0.0);
    for (std::size_t o = 0; o < fan_out[l]; ++o) {
      for (std::size_t i = 0; i < fan_in[l]; ++i) {
        prev[i] += wl[o * fan_in[l] + i] * delta[o];
      }
    }
    for (std::size_t i = 0; i < fan_in[l]; ++i) {
      prev[i] *= 1.0 - a[i] * a[i];
    }
    delta = std::move(prev);
  }
  return grad;
}

}  // namespace

ModelSpec::ModelSpec(ModelKind kind, std::size_t input_dim, std::vector<std::size_t> hidden)
    : kind_(kind),
      input_dim_(input_dim),
      hidden_(std::move(hidden)),
      param_dim_(count_params(kind_, input_dim_, hidden_)) {}

ModelSpec ModelSpec::linear(std::size_t input_dim) {
  if (input_dim == 0) {
    throw ConfigError("ModelSpec: input_dim must be positive");
  }
  return ModelSpec(ModelKind::kLinear, input_dim, {});
}

ModelSpec ModelSpec::mlp(std::size_t input_dim, std::vector<std::size_t> hidden) {
  if (input_dim == 0) {
    throw ConfigError("ModelSpec: input_dim must be positive");
  }
  if (hidden.empty()) {
    throw ConfigError("ModelSpec: an mlp needs at least one hidden layer");
  }
  for (std::size_t h : hidden) {
    if (h == 0) {
      throw ConfigError("ModelSpec: hidden widths must be positive");
    }
  }
  return ModelSpec(ModelKind::kMlp, input_dim, std::move(hidden));
}

double predict(const ModelSpec& spec, const DenseVector& w, const DenseVector& x) {
  check_dims(spec, w, x);
  if (spec.kind() == ModelKind::kLinear) {
    return dot(w, x);
  }
  std::vector<std::vector<double>> activations;
  return mlp_forward(spec, w, x, activations);
}

DenseVector gradient(const ModelSpec& spec, const DenseVector& w, const DenseVector& x) {
  return predict_with_gradient(spec, w, x).gradient;
}

PredictionAndGradient predict_with_gradient(const ModelSpec& spec, const DenseVector& w,
                                            const DenseVector& x) {
  check_dims(spec, w, x);
  if (spec.kind() == ModelKind::kLinear) {
    return {dot(w, x), x};
  }
  std::vector<std::vector<double>> activations;
  const double f = mlp_forward(spec, w, x, activations);
  return {f, mlp_backward(spec, w, activations)};
}

LossAndGradient loss_and_grad(const LossSpec& loss, const ModelSpec& spec, const DenseVector& w,
                              const DenseVector& x, double y) {
  PredictionAndGradient pg = predict_with_gradient(spec, w, x);
  pg.gradient *= loss.derivative(y, pg.value);
  return {loss.value(y, pg.value), std::move(pg.gradient)};
}

DenseVector init_parameters(const ModelSpec& spec, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseVector w(spec.param_dim());
  if (spec.kind() == ModelKind::kLinear) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = scale * normal(rng);
    }
    return w;
  }
  std::size_t off = 0;
  std::size_t in = spec.input_dim();
  auto fill_layer = [&](std::size_t out) {
    const double sd = scale / std::sqrt(static_cast<double>(in));
    for (std::size_t i = 0; i < out * in; ++i) {
      w[off + i] = sd * normal(rng);
    }
    off += out * in + out;
    in = out;
  };
  for (std::size_t h : spec.hidden()) {
    fill_layer(h);
  }
  fill_layer(1);
  return w;
}

}  // namespace orfit
