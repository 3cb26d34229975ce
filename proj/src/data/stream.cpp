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

#include "orfit/data/stream.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>
#include <random>
#include <string>

#include "orfit/error.hpp"

namespace orfit::data {

namespace {

constexpr double kCenter = (static_cast<double>(kImageSide) - 1.0) / 2.0;

double pixel_or_zero(const RawImage& img, long row, long col) {
  if (row < 0 || col < 0 || row >= static_cast<long>(kImageSide) ||
      col >= static_cast<long>(kImageSide)) {
    return 0.0;
  }
  return img.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
}

std::filesystem::path pick(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::path plain = dir / name;
  if (std::filesystem::exists(plain)) {
    return plain;
  }
  std::filesystem::path gz = dir / (name + ".gz");
  if (std::filesystem::exists(gz)) {
    return gz;
  }
  return plain;
}

std::vector<std::size_t> indices_of(const std::vector<std::uint8_t>& labels, std::uint8_t digit) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == digit) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

RawImage rotate_image(const RawImage& img, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  RawImage out;
  for (std::size_t row = 0; row < kImageSide; ++row) {
    for (std::size_t col = 0; col < kImageSide; ++col) {
      // Destination offset in (x right, y up) coordinates, rotated back by -theta.
      const double dx = static_cast<double>(col) - kCenter;
      const double dy = kCenter - static_cast<double>(row);
      const double sx = c * dx + s * dy;
      const double sy = -s * dx + c * dy;
      const double src_col = sx + kCenter;
      const double src_row = kCenter - sy;

      const double r0 = std::floor(src_row);
      const double c0 = std::floor(src_col);
      const double fr = src_row - r0;
      const double fc = src_col - c0;
      const long ir = static_cast<long>(r0);
      const long ic = static_cast<long>(c0);
      const double v = (1.0 - fr) * ((1.0 - fc) * pixel_or_zero(img, ir, ic) +
                                     fc * pixel_or_zero(img, ir, ic + 1)) +
                       fr * ((1.0 - fc) * pixel_or_zero(img, ir + 1, ic) +
                             fc * pixel_or_zero(img, ir + 1, ic + 1));
      out.at(row, col) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

DenseVector flatten_unit(const RawImage& img) {
  std::vector<double> v(kImagePixels);
  for (std::size_t i = 0; i < kImagePixels; ++i) {
    v[i] = static_cast<double>(img.pixels[i]) / 255.0;
  }
  return DenseVector(std::move(v));
}

MnistFiles MnistFiles::in_directory(const std::filesystem::path& dir) {
  return MnistFiles{pick(dir, "train-images-idx3-ubyte"), pick(dir, "train-labels-idx1-ubyte"),
                    pick(dir, "t10k-images-idx3-ubyte"), pick(dir, "t10k-labels-idx1-ubyte")};
}

StreamSplit build_rotated_mnist_stream(const MnistFiles& files, std::size_t count,
                                       std::uint64_t seed) {
  for (const auto& p : {files.train_images, files.train_labels, files.test_images,
                        files.test_labels}) {
    if (!std::filesystem::exists(p)) {
      throw IngestionError("MNIST file not found: " + p.string() +
                           " (run `orfit fetch-data --dir <dir>`)");
    }
  }
  return build_rotated_mnist_stream(load_idx_images(files.train_images),
                                    load_idx_labels(files.train_labels),
                                    load_idx_images(files.test_images),
                                    load_idx_labels(files.test_labels), count, seed);
}

StreamSplit build_rotated_mnist_stream(const std::vector<RawImage>& train_images,
                                       const std::vector<std::uint8_t>& train_labels,
                                       const std::vector<RawImage>& test_images,
                                       const std::vector<std::uint8_t>& test_labels,
                                       std::size_t count, std::uint64_t seed) {
  if (train_images.size() != train_labels.size() || test_images.size() != test_labels.size()) {
    throw IngestionError("MNIST: image and label counts differ");
  }
  const std::vector<std::size_t> pool = indices_of(train_labels, kRotatedMnistDigit);
  if (pool.size() < count) {
    throw InsufficientData("MNIST: requested " + std::to_string(count) + " digit-2 images, only " +
                           std::to_string(pool.size()) + " available");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);

  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), count, rng);
  std::shuffle(chosen.begin(), chosen.end(), rng);

  StreamSplit split;
  split.train.reserve(count);
  for (std::size_t idx : chosen) {
    const double theta = angle(rng);
    split.train.push_back({flatten_unit(rotate_image(train_images[idx], theta)), theta, 0});
  }
  std::stable_sort(split.train.begin(), split.train.end(),
                   [](const StreamSample& a, const StreamSample& b) { return a.y < b.y; });
  for (std::size_t k = 0; k < split.train.size(); ++k) {
    split.train[k].index = k;
  }

  const std::vector<std::size_t> test_pool = indices_of(test_labels, kRotatedMnistDigit);
  split.test.reserve(test_pool.size());
  for (std::size_t idx : test_pool) {
    const double theta = angle(rng);
    split.test.push_back(
        {flatten_unit(rotate_image(test_images[idx], theta)), theta, split.test.size()});
  }
  return split;
}

SyntheticStream synthetic_stream(const SyntheticSpec& spec) {
  if (spec.dim == 0) {
    throw ConfigError("synthetic_stream: dim must be positive");
  }
  ModelSpec teacher_model = spec.kind == SyntheticKind::kGaussianLinear
                                ? ModelSpec::linear(spec.dim)
                                : ModelSpec::mlp(spec.dim, spec.teacher_hidden);
  if (spec.count > teacher_model.param_dim()) {
    throw ConfigError("synthetic_stream: K = " + std::to_string(spec.count) +
                      " exceeds p = " + std::to_string(teacher_model.param_dim()));
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& e : v) {
      e = normal(rng);
    }
    return DenseVector(std::move(v));
  };

  DenseVector teacher = spec.kind == SyntheticKind::kGaussianLinear
                            ? draw(spec.dim)
                            : init_parameters(teacher_model, rng(), 1.0);
  SyntheticStream out{{}, {}, std::move(teacher), teacher_model};
  auto fill = [&](std::vector<StreamSample>& dst, std::size_t n) {
    dst.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      DenseVector x = draw(spec.dim);
      const double y = predict(out.teacher_model, out.teacher, x);
      dst.push_back({std::move(x), y, k});
    }
  };
  fill(out.samples, spec.count);
  fill(out.test, spec.test_count);
  return out;
}

}  // namespace orfit::data
