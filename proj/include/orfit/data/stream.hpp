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
#include <vector>

#include "orfit/data/idx.hpp"
#include "orfit/models.hpp"
#include "orfit/sample.hpp"

namespace orfit::data {

/// Rotates counter-clockwise (as displayed) by `theta` radians about the
/// image center using inverse-mapped bilinear interpolation; samples falling
/// outside the source read as 0. theta = 0 returns an exact copy.
RawImage rotate_image(const RawImage& img, double theta);

/// Flattened row-major pixels scaled to [0, 1].
DenseVector flatten_unit(const RawImage& img);

/// Paths of the four MNIST IDX files.
struct MnistFiles {
  std::filesystem::path train_images;
  std::filesystem::path train_labels;
  std::filesystem::path test_images;
  std::filesystem::path test_labels;

  /// Canonical file names inside `dir`, preferring the uncompressed file and
  /// falling back to the ".gz" variant.
  static MnistFiles in_directory(const std::filesystem::path& dir);
};

struct StreamSplit {
  std::vector<StreamSample> train;
  std::vector<StreamSample> test;
};

inline constexpr std::uint8_t kRotatedMnistDigit = 2;

/// Rotated-MNIST regression stream for digit 2: `count` training images drawn
/// without replacement, each rotated by an angle ~ U[0, pi] and sorted by
/// angle (smallest first); every digit-2 test image with its own random angle.
/// Targets are the angles in radians.
///
/// Throws IngestionError when files are missing or unreadable and
/// InsufficientData when fewer than `count` digit-2 training images exist.
StreamSplit build_rotated_mnist_stream(const MnistFiles& files, std::size_t count,
                                       std::uint64_t seed);

/// Same, from already-loaded arrays.
StreamSplit build_rotated_mnist_stream(const std::vector<RawImage>& train_images,
                                       const std::vector<std::uint8_t>& train_labels,
                                       const std::vector<RawImage>& test_images,
                                       const std::vector<std::uint8_t>& test_labels,
                                       std::size_t count, std::uint64_t seed);

enum class SyntheticKind { kGaussianLinear, kGaussianMlp };

struct SyntheticSpec {
  std::size_t dim = 0;    // input dimension (= p for the linear kind)
  std::size_t count = 0;  // K
  std::size_t test_count = 0;  // extra held-out samples from the same teacher
  std::uint64_t seed = 0;
  SyntheticKind kind = SyntheticKind::kGaussianLinear;
  std::vector<std::size_t> teacher_hidden{16};  // gaussian_mlp only
};

struct SyntheticStream {
  std::vector<StreamSample> samples;
  std::vector<StreamSample> test;
  /// Hidden parameters generating the targets (w* or the teacher MLP weights).
  DenseVector teacher;
  ModelSpec teacher_model;
};

/// x ~ N(0, I); y = w*^T x with w* ~ N(0, I) (gaussian_linear) or y = teacher
/// MLP output (gaussian_mlp). Throws ConfigError when count exceeds the
/// teacher's parameter count.
SyntheticStream synthetic_stream(const SyntheticSpec& spec);

}  // namespace orfit::data
