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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace orfit::harness {

struct MetricsRow {
  std::uint64_t seed = 0;
  std::size_t step = 0;
  double train_error = 0.0;
  double test_error = 0.0;
  double tracked_pred_error = 0.0;
  std::int64_t wall_micros = 0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

inline constexpr std::string_view kMetricsHeader =
    "seed,step,train_error,test_error,tracked_pred_error,wall_micros";

/// Header line plus one line per row, reals at 17 significant digits, LF endings.
std::string format_metrics_csv(const std::vector<MetricsRow>& rows);

/// Inverse of format_metrics_csv. Throws FormatError on malformed input.
std::vector<MetricsRow> parse_metrics_csv(std::string_view text);

/// Throws IngestionError (with the path) when the file cannot be written.
void emit_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

}  // namespace orfit::harness
