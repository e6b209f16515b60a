// Copyright 2026 The pplearn Authors.
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

// Dense inner loops over M x M row-major matrices. Each kernel has a scalar
// reference and, on x86-64, an AVX2/FMA variant; the variant is picked once at
// runtime from CPUID. Setting PPLEARN_SIMD=scalar in the environment forces the
// reference path.
//
// The min-based kernels are exact in every variant. Summing kernels may differ
// from the reference in the last bits because lanes reassociate additions.

#ifndef PPLEARN_KERNELS_HPP_
#define PPLEARN_KERNELS_HPP_

namespace pplearn::kernels {

struct KernelTable {
  const char* name;

  // out[i] = min_{j != i} p[i*m + j].  Requires m >= 2.
  void (*row_min_offdiag)(const double* p, int m, double* out);

  // out[j] = sum_i x[i] * p[i*m + j].
  void (*left_multiply)(const double* x, const double* p, int m, double* out);

  // out[i] = sum_j p[i*m + j] * y[j].
  void (*right_multiply)(const double* p, const double* y, int m, double* out);

  // sum_i sum_j x[i] * p[i*m + j] * y[j].
  double (*bilinear)(const double* x, const double* p, const double* y, int m);

  // row[j] += w wherever rank[j] > rank_i. Ranks are 1-based positions stored
  // as doubles; row[i] itself is never touched because rank[i] == rank_i.
  void (*accumulate_beaten)(const double* rank, double rank_i, double w,
                            double* row, int m);

  // y[k] += a * x[k] for k < n.
  void (*axpy)(double a, const double* x, double* y, int n);
};

// Reference implementation; always available.
const KernelTable& scalar();

// AVX2/FMA implementation, or nullptr when the build or the CPU lacks it.
const KernelTable* avx2();

// The table every library routine uses.
const KernelTable& active();

}  // namespace pplearn::kernels

#endif  // PPLEARN_KERNELS_HPP_
