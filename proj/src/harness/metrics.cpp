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

#include "orfit/harness/metrics.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orfit/error.hpp"

namespace orfit::harness {

namespace {

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("metrics CSV line " + std::to_string(line) + ": bad field '" +
                      std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_metrics_csv(const std::vector<MetricsRow>& rows) {
  std::string out(kMetricsHeader);
  out += '\n';
  for (const MetricsRow& r : rows) {
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.step);
    out += ',';
    append_real(out, r.train_error);
    out += ',';
    append_real(out, r.test_error);
    out += ',';
    append_real(out, r.tracked_pred_error);
    out += ',';
    out += std::to_string(r.wall_micros);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRow> parse_metrics_csv(std::string_view text) {
  std::vector<MetricsRow> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos) {
      throw FormatError("metrics CSV: missing final newline");
    }
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol + 1);
    ++line_no;
    if (!header_seen) {
      if (line != kMetricsHeader) {
        throw FormatError("metrics CSV: unexpected header '" + std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }
    std::string_view fields[6];
    for (std::size_t i = 0; i < 6; ++i) {
      const std::size_t comma = line.find(',');
      if ((comma == std::string_view::npos) != (i == 5)) {
        throw FormatError("metrics CSV line " + std::to_string(line_no) + ": expected 6 fields");
      }
      fields[i] = line.substr(0, comma);
      line.remove_prefix(i == 5 ? line.size() : comma + 1);
    }
    rows.push_back({parse_field<std::uint64_t>(fields[0], line_no),
                    parse_field<std::size_t>(fields[1], line_no),
                    parse_field<double>(fields[2], line_no),
                    parse_field<double>(fields[3], line_no),
                    parse_field<double>(fields[4], line_no),
                    parse_field<std::int64_t>(fields[5], line_no)});
  }
  if (!header_seen) {
    throw FormatError("metrics CSV: empty input");
  }
  return rows;
}

void emit_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path) {
  const std::string text = format_metrics_csv(rows);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) {
    throw IngestionError("cannot write metrics to " + path.string());
  }
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestionError("cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_metrics_csv(text.str());
}

}  // namespace orfit::harness
