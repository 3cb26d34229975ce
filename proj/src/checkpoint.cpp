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

#include "orfit/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "orfit/error.hpp"

namespace orfit {

namespace {

constexpr const char* kFormat = "orfit-state";
constexpr int kVersion = 1;

void write_f64(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> bytes{};
  for (std::size_t i = 0; i < 8; ++i) {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  }
  out.write(bytes.data(), bytes.size());
}

double read_f64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != 8) {
    throw IngestionError("checkpoint: truncated payload");
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

DenseVector read_vector(std::istream& in, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) {
    x = read_f64(in);
  }
  try {
    return DenseVector(std::move(v));
  } catch (const ContractViolation& e) {
    throw IngestionError(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace

void write_checkpoint(const OrfitState& state, std::ostream& out) {
  const std::vector<DenseVector> basis = state.basis();
  nlohmann::json header{
      {"format", kFormat},
      {"version", kVersion},
      {"param_dim", state.w.size()},
      {"step", state.step},
      {"last_eta", state.last_eta},
      {"policy",
       {{"kind", memory_kind_name(state.policy.kind)},
        {"m", state.policy.m},
        {"rng_seed", state.policy.rng_seed}}},
      {"basis_count", basis.size()},
  };
  if (const auto* s = std::get_if<SubspaceSummary>(&state.memory)) {
    header["sigma"] = s->sigma();
    header["absorbed"] = s->absorbed();
  } else {
    std::ostringstream rng;
    rng << std::get<BasisList>(state.memory).rng;
    header["rng_state"] = rng.str();
  }
  out << header.dump() << '\n';
  for (double v : state.w) {
    write_f64(out, v);
  }
  for (const DenseVector& b : basis) {
    for (double v : b) {
      write_f64(out, v);
    }
  }
  if (!out) {
    throw IngestionError("checkpoint: write failed");
  }
}

OrfitState read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw IngestionError("checkpoint: missing header");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
    if (header.at("format").get<std::string>() != kFormat ||
        header.at("version").get<int>() != kVersion) {
      throw IngestionError("checkpoint: unsupported format or version");
    }
    const auto p = header.at("param_dim").get<std::size_t>();
    const auto r = header.at("basis_count").get<std::size_t>();
    MemoryPolicy policy{parse_memory_kind(header.at("policy").at("kind").get<std::string>()),
                        header.at("policy").at("m").get<std::size_t>(),
                        header.at("policy").at("rng_seed").get<std::uint64_t>()};

    OrfitState state = OrfitState::initial(read_vector(in, p), policy);
    state.step = header.at("step").get<std::size_t>();
    state.last_eta = header.at("last_eta").get<double>();

    std::vector<DenseVector> basis;
    basis.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
      basis.push_back(read_vector(in, p));
    }
    if (policy.kind == MemoryKind::kIpca) {
      state.memory = SubspaceSummary::from_parts(p, policy.m, std::move(basis),
                                                 header.at("sigma").get<std::vector<double>>(),
                                                 header.at("absorbed").get<std::size_t>());
    } else {
      auto& list = std::get<BasisList>(state.memory);
      list.vectors = std::move(basis);
      std::istringstream rng(header.at("rng_state").get<std::string>());
      rng >> list.rng;
      if (!rng) {
        throw IngestionError("checkpoint: malformed rng_state");
      }
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError(std::string("checkpoint: malformed header: ") + e.what());
  } catch (const ContractViolation& e) {
    throw IngestionError(std::string("checkpoint: ") + e.what());
  } catch (const ConfigError& e) {
    throw IngestionError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const OrfitState& state, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IngestionError("checkpoint: cannot open " + path.string() + " for writing");
  }
  write_checkpoint(state, out);
}

OrfitState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IngestionError("checkpoint: cannot open " + path.string());
  }
  return read_checkpoint(in);
}

}  // namespace orfit
