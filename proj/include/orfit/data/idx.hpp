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

// IDX container (the MNIST distribution format): a big-endian 32-bit magic
// 0x000008NN where NN is the number of dimensions, NN big-endian 32-bit
// dimension sizes, then the uint8 payload in row-major order. Files may be
// gzip-compressed; decompression is transparent.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace orfit::data {

inline constexpr std::size_t kImageSide = 28;
inline constexpr std::size_t kImagePixels = kImageSide * kImageSide;

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// 28 x 28 grayscale image, row-major.
struct RawImage {
  std::array<std::uint8_t, kImagePixels> pixels{};

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * kImageSide + col]; }
  std::uint8_t& at(std::size_t row, std::size_t col) { return pixels[row * kImageSide + col]; }

  friend bool operator==(const RawImage&, const RawImage&) = default;
};

using IdxContents = std::variant<std::vector<RawImage>, std::vector<std::uint8_t>>;

/// Parses an in-memory IDX buffer (already decompressed).
///
/// Throws FormatError for a magic other than 0x00000803 (with 28 x 28 images)
/// or 0x00000801, and CorruptFile when the payload is shorter than the
/// dimensions promise.
IdxContents parse_idx(std::span<const std::uint8_t> bytes);

/// Reads and parses an IDX file, gzip or plain. Throws IngestionError when
/// the file cannot be read.
IdxContents load_idx(const std::filesystem::path& path);

std::vector<RawImage> load_idx_images(const std::filesystem::path& path);
std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path);

/// Serializes images or labels back to (uncompressed) IDX bytes.
std::vector<std::uint8_t> encode_idx(const IdxContents& contents);

/// Whole file contents, gunzipped when the gzip magic is present.
std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path);

}  // namespace orfit::data
