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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orfit::data {

struct MnistArchive {
  std::string_view name;    // decompressed file name, e.g. "t10k-labels-idx1-ubyte"
  std::string_view sha256;  // of the decompressed file, lowercase hex
};

inline constexpr std::array<MnistArchive, 4> kMnistArchives{{
    {"train-images-idx3-ubyte", "ba891046e6505d7aadcbbe25680a0738ad16aec93bde7f9b65e87a2fc25776db"},
    {"train-labels-idx1-ubyte", "65a50cbbf4e906d70832878ad85ccda5333a97f0f4c3dd2ef09a8a9eef7101c5"},
    {"t10k-images-idx3-ubyte", "0fa7898d509279e482958e8ce81c8e77db3f2f8254e26661ceb7762c4d494ce7"},
    {"t10k-labels-idx1-ubyte", "ff7bcfd416de33731a308c3f266cc351222c34898ecbeaf847f06e48f7ec33f2"},
}};

/// Mirrors tried in order; each serves "<name>.gz".
inline constexpr std::array<std::string_view, 2> kMnistMirrors{
    "https://ossci-datasets.s3.amazonaws.com/mnist/",
    "https://storage.googleapis.com/cvdf-datasets/mnist/",
};

std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// Checks every file in `dir` against kMnistArchives. Returns the names that
/// are missing or mismatched.
std::vector<std::string> verify_mnist_dir(const std::filesystem::path& dir);

/// Downloads, gunzips and checksums any MNIST file not already valid in `dir`.
/// Throws IngestionError (network failure, checksum mismatch).
void fetch_mnist(const std::filesystem::path& dir);

}  // namespace orfit::data
