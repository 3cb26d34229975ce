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
#include <vector>

#include "orfit/linalg/dense.hpp"

namespace orfit {

enum class ModelKind { kLinear, kMlp };

/// Scalar-output model f(x; w) over a flat parameter vector.
///
/// Linear: f = w.x with param_dim == input_dim.
/// Mlp: tanh hidden layers and a linear scalar output. Parameters are laid out
/// layer by layer as the row-major weight matrix (out x in) followed by the
/// bias vector.
class ModelSpec {
 public:
  /// Both throw ConfigError for a zero input dimension; mlp also needs at least one
  /// hidden layer, every width positive.
  static ModelSpec linear(std::size_t input_dim);
  static ModelSpec mlp(std::size_t input_dim, std::vector<std::size_t> hidden);

  ModelKind kind() const { return kind_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t param_dim() const { return param_dim_; }
  const std::vector<std::size_t>& hidden() const { return hidden_; }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  ModelSpec(ModelKind kind, std::size_t input_dim, std::vector<std::size_t> hidden);

  ModelKind kind_;
  std::size_t input_dim_;
  std::vector<std::size_t> hidden_;
  std::size_t param_dim_;
};

/// Squared loss l(y, f) = (y - f)^2 / 2, so l' = f - y.
struct LossSpec {
  double value(double y, double f) const { return 0.5 * (y - f) * (y - f); }
  double derivative(double y, double f) const { return f - y; }
};

struct PredictionAndGradient {
  double value;
  DenseVector gradient;
};

struct LossAndGradient {
  double loss;
  DenseVector gradient;
};

double predict(const ModelSpec& spec, const DenseVector& w, const DenseVector& x);

/// grad_w f(x; w); exactly x for the linear model.
DenseVector gradient(const ModelSpec& spec, const DenseVector& w, const DenseVector& x);

/// f and grad_w f from one forward/backward pass.
PredictionAndGradient predict_with_gradient(const ModelSpec& spec, const DenseVector& w,
                                            const DenseVector& x);

/// (l(y, f), l'(y, f) * grad_w f), the gradient scaled from gradient().
LossAndGradient loss_and_grad(const LossSpec& loss, const ModelSpec& spec, const DenseVector& w,
                              const DenseVector& x, double y);

/// Gaussian initialization: weights ~ N(0, 1/fan_in), biases 0 for the MLP;
/// N(0, scale^2) per entry for the linear model.
DenseVector init_parameters(const ModelSpec& spec, std::uint64_t seed, double scale = 1.0);

}  // namespace orfit
