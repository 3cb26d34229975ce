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

#include "orfit/data/fetch.hpp"

#include <curl/curl.h>
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <memory>

#include "orfit/data/idx.hpp"
#include "orfit/error.hpp"

namespace orfit::data {

namespace {

std::size_t append_body(char* ptr, std::size_t size, std::size_t nmemb, void* userdata) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(userdata);
  out->insert(out->end(), ptr, ptr + size * nmemb);
  return size * nmemb;
}

std::vector<std::uint8_t> http_get(const std::string& url) {
  std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> curl(curl_easy_init(), &curl_easy_cleanup);
  if (!curl) {
    throw IngestionError("curl_easy_init failed");
  }
  std::vector<std::uint8_t> body;
  curl_easy_setopt(curl.get(), CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl.get(), CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_FAILONERROR, 1L);
  curl_easy_setopt(curl.get(), CURLOPT_CONNECTTIMEOUT, 20L);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEFUNCTION, &append_body);
  curl_easy_setopt(curl.get(), CURLOPT_WRITEDATA, &body);
  const CURLcode rc = curl_easy_perform(curl.get());
  if (rc != CURLE_OK) {
    throw IngestionError(url + ": " + curl_easy_strerror(rc));
  }
  return body;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IngestionError("cannot write " + path.string());
  }
}

}  // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalFailure("EVP_Digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::vector<std::string> verify_mnist_dir(const std::filesystem::path& dir) {
  std::vector<std::string> bad;
  for (const MnistArchive& a : kMnistArchives) {
    const std::filesystem::path path = dir / std::string(a.name);
    if (!std::filesystem::exists(path) || sha256_hex(read_file(path)) != a.sha256) {
      bad.emplace_back(a.name);
    }
  }
  return bad;
}

void fetch_mnist(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  curl_global_init(CURL_GLOBAL_DEFAULT);
  for (const std::string& name : verify_mnist_dir(dir)) {
    std::string expected;
    for (const MnistArchive& a : kMnistArchives) {
      if (a.name == name) {
        expected = a.sha256;
      }
    }
    std::string errors;
    bool ok = false;
    for (std::string_view mirror : kMnistMirrors) {
      const std::string url = std::string(mirror) + name + ".gz";
      try {
        const std::filesystem::path gz = dir / (name + ".gz");
        write_file(gz, http_get(url));
        const std::vector<std::uint8_t> raw = read_maybe_gzip(gz);
        const std::string got = sha256_hex(raw);
        if (got != expected) {
          throw IngestionError(url + ": SHA-256 " + got + ", expected " + expected);
        }
        write_file(dir / name, raw);
        std::filesystem::remove(gz);
        ok = true;
        break;
      } catch (const IngestionError& e) {
        errors += std::string("\n  ") + e.what();
      }
    }
    if (!ok) {
      curl_global_cleanup();
      throw IngestionError("could not fetch " + name + errors);
    }
  }
  curl_global_cleanup();
}

}  // namespace orfit::data
