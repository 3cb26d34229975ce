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

#include "orfit/data/idx.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>

#include "orfit/error.hpp"

namespace orfit::data {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::string hex_magic(std::uint32_t magic) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%08x", magic);
  return buf;
}

struct GzCloser {
  void operator()(gzFile f) const { gzclose(f); }
};

}  // namespace

IdxContents parse_idx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) {
    throw CorruptFile("IDX: file shorter than its magic number");
  }
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImagesMagic && magic != kIdxLabelsMagic) {
    throw FormatError("IDX: unsupported magic " + hex_magic(magic));
  }
  const std::size_t ndims = magic & 0xffu;
  const std::size_t header = 4 + 4 * ndims;
  if (bytes.size() < header) {
    throw CorruptFile("IDX: truncated header");
  }
  std::vector<std::size_t> dims(ndims);
  std::size_t payload = 1;
  for (std::size_t d = 0; d < ndims; ++d) {
    dims[d] = read_be32(bytes, 4 + 4 * d);
    payload *= dims[d];
  }
  if (bytes.size() - header < payload) {
    throw CorruptFile("IDX: payload holds " + std::to_string(bytes.size() - header) +
                      " bytes, header promises " + std::to_string(payload));
  }
  const std::uint8_t* data = bytes.data() + header;

  if (magic == kIdxLabelsMagic) {
    return std::vector<std::uint8_t>(data, data + payload);
  }
  if (dims[1] != kImageSide || dims[2] != kImageSide) {
    throw FormatError("IDX: images must be 28 x 28, got " + std::to_string(dims[1]) + " x " +
                      std::to_string(dims[2]));
  }
  std::vector<RawImage> images(dims[0]);
  for (std::size_t i = 0; i < dims[0]; ++i) {
    std::copy_n(data + i * kImagePixels, kImagePixels, images[i].pixels.begin());
  }
  return images;
}

std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path) {
  // gzread passes non-gzip files through unchanged.
  std::unique_ptr<gzFile_s, GzCloser> file(gzopen(path.c_str(), "rb"));
  if (!file) {
    throw IngestionError("cannot open " + path.string());
  }
  std::vector<std::uint8_t> out;
  std::vector<std::uint8_t> chunk(1 << 20);
  for (;;) {
    const int n = gzread(file.get(), chunk.data(), static_cast<unsigned>(chunk.size()));
    if (n < 0) {
      int err = 0;
      const char* msg = gzerror(file.get(), &err);
      throw CorruptFile("read error in " + path.string() + ": " + msg);
    }
    if (n == 0) {
      break;
    }
    out.insert(out.end(), chunk.begin(), chunk.begin() + n);
  }
  return out;
}

IdxContents load_idx(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_maybe_gzip(path);
  try {
    return parse_idx(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const CorruptFile& e) {
    throw CorruptFile(path.string() + ": " + e.what());
  }
}

std::vector<RawImage> load_idx_images(const std::filesystem::path& path) {
  IdxContents c = load_idx(path);
  if (auto* images = std::get_if<std::vector<RawImage>>(&c)) {
    return std::move(*images);
  }
  throw FormatError(path.string() + " holds labels, expected images");
}

std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path) {
  IdxContents c = load_idx(path);
  if (auto* labels = std::get_if<std::vector<std::uint8_t>>(&c)) {
    return std::move(*labels);
  }
  throw FormatError(path.string() + " holds images, expected labels");
}

std::vector<std::uint8_t> encode_idx(const IdxContents& contents) {
  std::vector<std::uint8_t> out;
  if (const auto* labels = std::get_if<std::vector<std::uint8_t>>(&contents)) {
    write_be32(out, kIdxLabelsMagic);
    write_be32(out, static_cast<std::uint32_t>(labels->size()));
    out.insert(out.end(), labels->begin(), labels->end());
    return out;
  }
  const auto& images = std::get<std::vector<RawImage>>(contents);
  write_be32(out, kIdxImagesMagic);
  write_be32(out, static_cast<std::uint32_t>(images.size()));
  write_be32(out, kImageSide);
  write_be32(out, kImageSide);
  for (const RawImage& img : images) {
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  }
  return out;
}

}  // namespace orfit::data
