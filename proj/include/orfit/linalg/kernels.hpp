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

// Dense double-precision inner loops.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at startup from CPUID; set
// ORFIT_SIMD=scalar in the environment to force the reference path.
// Summation order differs between variants, so results agree to rounding,
// not bitwise. Within one process the choice is fixed, which keeps every run
// reproducible on a given machine.

#pragma once

#include <cstddef>
#include <string_view>

namespace orfit::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
  // y = A x, A is rows x cols row-major
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // A += alpha * x y^T, A is rows x cols row-major
  void (*ger)(double alpha, const double* x, const double* y, double* a, std::size_t rows,
              std::size_t cols);
};

const KernelTable& scalar_table();

/// Nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// The table used by the rest of the library.
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace orfit::kernels
