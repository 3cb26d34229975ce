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

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "doctest.h"
#include "orfit/data/fetch.hpp"
#include "orfit/data/idx.hpp"
#include "orfit/data/stream.hpp"
#include "orfit/error.hpp"

using namespace orfit;
using namespace orfit::data;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("orfit_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_gzip(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  gzFile f = gzopen(path.c_str(), "wb");
  REQUIRE(f != nullptr);
  gzwrite(f, bytes.data(), static_cast<unsigned>(bytes.size()));
  gzclose(f);
}

RawImage random_image(std::mt19937_64& rng) {
  RawImage img;
  std::uniform_int_distribution<int> px(0, 255);
  for (auto& p : img.pixels) {
    p = static_cast<std::uint8_t>(px(rng));
  }
  return img;
}

std::vector<std::uint8_t> be32(std::initializer_list<std::uint32_t> words) {
  std::vector<std::uint8_t> out;
  for (std::uint32_t w : words) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out.push_back(static_cast<std::uint8_t>(w >> shift));
    }
  }
  return out;
}

bool have_mnist() { return verify_mnist_dir(ORFIT_MNIST_DIR).empty(); }

}  // namespace

TEST_CASE("idx label file parses") {
  auto bytes = be32({0x801, 3});
  bytes.insert(bytes.end(), {7, 2, 1});
  const IdxContents c = parse_idx(bytes);
  CHECK(std::get<std::vector<std::uint8_t>>(c) == std::vector<std::uint8_t>{7, 2, 1});
}

TEST_CASE("idx image file parses row-major") {
  auto bytes = be32({0x803, 2, 28, 28});
  for (int i = 0; i < 2 * 784; ++i) {
    bytes.push_back(static_cast<std::uint8_t>(i % 251));
  }
  const auto images = std::get<std::vector<RawImage>>(parse_idx(bytes));
  REQUIRE(images.size() == 2);
  CHECK(images[0].at(0, 1) == 1);
  CHECK(images[0].at(1, 0) == 28);
  CHECK(images[1].at(0, 0) == 784 % 251);
}

TEST_CASE("idx errors") {
  CHECK_THROWS_AS(parse_idx(be32({0x903, 1})), FormatError);
  CHECK_THROWS_AS(parse_idx(be32({0x803, 1, 27, 28})), CorruptFile);
  auto bad_side = be32({0x803, 1, 27, 28});
  bad_side.resize(bad_side.size() + 27 * 28);
  CHECK_THROWS_AS(parse_idx(bad_side), FormatError);
  auto truncated = be32({0x801, 5});
  truncated.insert(truncated.end(), {1, 2});
  CHECK_THROWS_AS(parse_idx(truncated), CorruptFile);
  CHECK_THROWS_AS(parse_idx(std::vector<std::uint8_t>{0, 0}), CorruptFile);
  CHECK_THROWS_AS(parse_idx(be32({0x803, 1})), CorruptFile);
  CHECK_THROWS_AS(load_idx("/nonexistent/orfit/file"), IngestionError);
}

TEST_CASE("idx encode round trip through plain and gzip files") {
  std::mt19937_64 rng(1);
  std::vector<RawImage> images{random_image(rng), random_image(rng), random_image(rng)};
  const std::vector<std::uint8_t> labels{2, 0, 9};
  const auto dir = scratch_dir("idx");
  write_bytes(dir / "img", encode_idx(images));
  write_gzip(dir / "img.gz", encode_idx(images));
  write_gzip(dir / "lbl.gz", encode_idx(labels));
  CHECK(load_idx_images(dir / "img") == images);
  CHECK(load_idx_images(dir / "img.gz") == images);
  CHECK(load_idx_labels(dir / "lbl.gz") == labels);
  CHECK_THROWS_AS(load_idx_labels(dir / "img"), FormatError);
  CHECK(read_maybe_gzip(dir / "img.gz") == read_maybe_gzip(dir / "img"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("rotation by zero is the identity") {
  std::mt19937_64 rng(2);
  const RawImage img = random_image(rng);
  CHECK(rotate_image(img, 0.0) == img);
  CHECK(rotate_image(img, 2.0 * std::numbers::pi) == img);
}

TEST_CASE("rotation by multiples of a quarter turn permutes pixels") {
  std::mt19937_64 rng(3);
  const RawImage img = random_image(rng);
  const RawImage quarter = rotate_image(img, std::numbers::pi / 2);
  const RawImage half = rotate_image(img, std::numbers::pi);
  int worst_q = 0;
  int worst_h = 0;
  for (std::size_t r = 0; r < kImageSide; ++r) {
    for (std::size_t c = 0; c < kImageSide; ++c) {
      // Counter-clockwise: the top-right corner moves to the top-left.
      worst_q = std::max(worst_q, std::abs(quarter.at(r, c) - img.at(c, 27 - r)));
      worst_h = std::max(worst_h, std::abs(half.at(r, c) - img.at(27 - r, 27 - c)));
    }
  }
  CHECK(worst_q <= 1);
  CHECK(worst_h <= 1);
}

TEST_CASE("rotation of a centrally symmetric image by pi is near-identity") {
  RawImage img;
  for (std::size_t r = 8; r < 20; ++r) {
    for (std::size_t c = 10; c < 18; ++c) {
      img.at(r, c) = 200;
    }
  }
  const RawImage out = rotate_image(img, std::numbers::pi);
  int worst = 0;
  for (std::size_t i = 0; i < kImagePixels; ++i) {
    worst = std::max(worst, std::abs(out.pixels[i] - img.pixels[i]));
  }
  CHECK(worst <= 2);
}

TEST_CASE("rotation fills uncovered corners with zero") {
  RawImage img;
  img.pixels.fill(255);
  const RawImage out = rotate_image(img, std::numbers::pi / 4);
  CHECK(out.at(0, 0) == 0);
  CHECK(out.at(27, 27) == 0);
  CHECK(out.at(14, 14) == 255);
}

TEST_CASE("flatten scales to the unit interval") {
  RawImage img;
  img.at(0, 0) = 255;
  img.at(0, 1) = 51;
  const DenseVector v = flatten_unit(img);
  REQUIRE(v.size() == 784);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(v[2] == 0.0);
}

TEST_CASE("rotated stream from synthetic arrays") {
  std::mt19937_64 rng(4);
  std::vector<RawImage> train;
  std::vector<std::uint8_t> train_labels;
  for (int i = 0; i < 30; ++i) {
    train.push_back(random_image(rng));
    train_labels.push_back(static_cast<std::uint8_t>(i % 3));
  }
  std::vector<RawImage> test{random_image(rng), random_image(rng)};
  const std::vector<std::uint8_t> test_labels{2, 1};

  const StreamSplit a = build_rotated_mnist_stream(train, train_labels, test, test_labels, 10, 9);
  REQUIRE(a.train.size() == 10);
  CHECK(a.test.size() == 1);
  for (std::size_t k = 0; k < a.train.size(); ++k) {
    CHECK(a.train[k].index == k);
    CHECK(a.train[k].y >= 0.0);
    CHECK(a.train[k].y < std::numbers::pi);
    if (k > 0) {
      CHECK(a.train[k - 1].y <= a.train[k].y);
    }
  }
  const StreamSplit b = build_rotated_mnist_stream(train, train_labels, test, test_labels, 10, 9);
  for (std::size_t k = 0; k < a.train.size(); ++k) {
    CHECK(a.train[k].x == b.train[k].x);
    CHECK(a.train[k].y == b.train[k].y);
  }
  CHECK_THROWS_AS(build_rotated_mnist_stream(train, train_labels, test, test_labels, 11, 9),
                  InsufficientData);
  train_labels.pop_back();
  CHECK_THROWS_AS(build_rotated_mnist_stream(train, train_labels, test, test_labels, 5, 9),
                  IngestionError);
}

TEST_CASE("rotated MNIST stream") {
  if (!have_mnist()) {
    MESSAGE("MNIST not present in " ORFIT_MNIST_DIR ", skipped");
    return;
  }
  const MnistFiles files = MnistFiles::in_directory(ORFIT_MNIST_DIR);
  const StreamSplit s = build_rotated_mnist_stream(files, 100, 0);
  REQUIRE(s.train.size() == 100);
  CHECK(s.test.size() == 1032);
  CHECK(std::is_sorted(s.train.begin(), s.train.end(),
                       [](const StreamSample& a, const StreamSample& b) { return a.y < b.y; }));
  for (const auto* set : {&s.train, &s.test}) {
    for (const StreamSample& x : *set) {
      REQUIRE(x.x.size() == 784);
      CHECK(norm_inf(x.x) <= 1.0);
      CHECK(*std::min_element(x.x.data(), x.x.data() + 784) >= 0.0);
      CHECK(x.y >= 0.0);
      CHECK(x.y < std::numbers::pi);
    }
  }
  const StreamSplit again = build_rotated_mnist_stream(files, 100, 0);
  for (std::size_t k = 0; k < 100; ++k) {
    CHECK(again.train[k].x == s.train[k].x);
    CHECK(again.train[k].y == s.train[k].y);
  }
  CHECK_FALSE(build_rotated_mnist_stream(files, 100, 1).train[0].x == s.train[0].x);
  CHECK_THROWS_AS(build_rotated_mnist_stream(files, 5959, 0), InsufficientData);
  CHECK_NOTHROW(build_rotated_mnist_stream(files, 5958, 0));
}

TEST_CASE("missing MNIST files are an ingestion error") {
  const auto dir = scratch_dir("empty_mnist");
  CHECK_THROWS_AS(build_rotated_mnist_stream(MnistFiles::in_directory(dir), 10, 0), IngestionError);
  CHECK(verify_mnist_dir(dir).size() == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("synthetic linear stream") {
  const SyntheticSpec spec{20, 15, 5, 3, SyntheticKind::kGaussianLinear, {}};
  const SyntheticStream s = synthetic_stream(spec);
  REQUIRE(s.samples.size() == 15);
  CHECK(s.test.size() == 5);
  CHECK(s.teacher.size() == 20);
  for (const auto* set : {&s.samples, &s.test}) {
    for (const StreamSample& x : *set) {
      CHECK(std::abs(x.y - dot(s.teacher, x.x)) <= 1e-12 * (1.0 + std::abs(x.y)));
    }
  }
  const SyntheticStream again = synthetic_stream(spec);
  CHECK(again.teacher == s.teacher);
  CHECK(again.samples[14].x == s.samples[14].x);
  SyntheticSpec other = spec;
  other.seed = 4;
  CHECK_FALSE(synthetic_stream(other).teacher == s.teacher);
}

TEST_CASE("synthetic inputs look standard normal") {
  const SyntheticStream s = synthetic_stream({400, 400, 0, 5, SyntheticKind::kGaussianLinear, {}});
  double sum = 0.0;
  double sq = 0.0;
  double cross = 0.0;
  std::size_t n = 0;
  for (const StreamSample& x : s.samples) {
    for (std::size_t i = 0; i < x.x.size(); ++i) {
      sum += x.x[i];
      sq += x.x[i] * x.x[i];
      if (i + 1 < x.x.size()) {
        cross += x.x[i] * x.x[i + 1];
      }
      ++n;
    }
  }
  const double mean = sum / static_cast<double>(n);
  // 160000 draws: 5 standard errors is 0.0125 for the mean and about 0.018 for the variance.
  CHECK(std::abs(mean) < 0.0125);
  CHECK(std::abs(sq / static_cast<double>(n) - 1.0) < 0.018);
  CHECK(std::abs(cross / static_cast<double>(n)) < 0.0125);
}

TEST_CASE("synthetic mlp stream") {
  const SyntheticStream s = synthetic_stream({6, 30, 3, 1, SyntheticKind::kGaussianMlp, {4}});
  CHECK(s.teacher_model.param_dim() == 6 * 4 + 4 + 4 + 1);
  for (const StreamSample& x : s.samples) {
    CHECK(x.y == predict(s.teacher_model, s.teacher, x.x));
  }
  CHECK_THROWS_AS(synthetic_stream({6, 34, 0, 1, SyntheticKind::kGaussianMlp, {4}}), ConfigError);
}

TEST_CASE("synthetic stream rejects K > p and empty dimension") {
  CHECK_THROWS_AS(synthetic_stream({4, 5, 0, 0, SyntheticKind::kGaussianLinear, {}}), ConfigError);
  CHECK_THROWS_AS(synthetic_stream({0, 0, 0, 0, SyntheticKind::kGaussianLinear, {}}), ConfigError);
  CHECK_NOTHROW(synthetic_stream({4, 4, 0, 0, SyntheticKind::kGaussianLinear, {}}));
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex({}) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const std::string abc = "abc";
  CHECK(sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size())) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("mnist directory verification flags corrupted files") {
  const auto dir = scratch_dir("verify_mnist");
  write_bytes(dir / "t10k-labels-idx1-ubyte", {1, 2, 3});
  const auto bad = verify_mnist_dir(dir);
  CHECK(bad.size() == 4);
  CHECK(std::find(bad.begin(), bad.end(), "t10k-labels-idx1-ubyte") != bad.end());
  std::filesystem::remove_all(dir);
  if (have_mnist()) {
    CHECK(verify_mnist_dir(ORFIT_MNIST_DIR).empty());
  }
}
