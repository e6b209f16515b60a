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

// Compiled with -mavx2 -mfma. Nothing here may run before the dispatcher has
// confirmed CPU support.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "kernels_internal.hpp"

namespace pplearn::kernels {
namespace {

inline double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double horizontal_min(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_min_sd(lo, swapped));
}

double range_min(const double* x, int begin, int end) {
  double best = std::numeric_limits<double>::infinity();
  int j = begin;
  if (end - begin >= 4) {
    __m256d acc = _mm256_set1_pd(best);
    for (; j + 4 <= end; j += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + j));
    best = horizontal_min(acc);
  }
  for (; j < end; ++j) best = std::min(best, x[j]);
  return best;
}

void row_min_offdiag(const double* p, int m, double* out) {
  for (int i = 0; i < m; ++i) {
    const double* row = p + static_cast<long>(i) * m;
    out[i] = std::min(range_min(row, 0, i), range_min(row, i + 1, m));
  }
}

void left_multiply(const double* x, const double* p, int m, double* out) {
  std::fill(out, out + m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = p + static_cast<long>(i) * m;
    const __m256d xi = _mm256_set1_pd(x[i]);
    int j = 0;
    for (; j + 4 <= m; j += 4) {
      __m256d acc = _mm256_loadu_pd(out + j);
      acc = _mm256_fmadd_pd(xi, _mm256_loadu_pd(row + j), acc);
      _mm256_storeu_pd(out + j, acc);
    }
    for (; j < m; ++j) out[j] += x[i] * row[j];
  }
}

double dot(const double* a, const double* b, int m) {
  __m256d acc = _mm256_setzero_pd();
  int j = 0;
  for (; j + 4 <= m; j += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc);
  }
  double total = horizontal_sum(acc);
  for (; j < m; ++j) total += a[j] * b[j];
  return total;
}

void right_multiply(const double* p, const double* y, int m, double* out) {
  for (int i = 0; i < m; ++i) out[i] = dot(p + static_cast<long>(i) * m, y, m);
}

double bilinear(const double* x, const double* p, const double* y, int m) {
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    total += x[i] * dot(p + static_cast<long>(i) * m, y, m);
  }
  return total;
}

void accumulate_beaten(const double* rank, double rank_i, double w, double* row,
                       int m) {
  const __m256d threshold = _mm256_set1_pd(rank_i);
  const __m256d weight = _mm256_set1_pd(w);
  int j = 0;
  for (; j + 4 <= m; j += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(rank + j), threshold, _CMP_GT_OQ);
    __m256d acc = _mm256_add_pd(_mm256_loadu_pd(row + j), _mm256_and_pd(mask, weight));
    _mm256_storeu_pd(row + j, acc);
  }
  for (; j < m; ++j) {
    if (rank[j] > rank_i) row[j] += w;
  }
}

void axpy(double a, const double* x, double* y, int n) {
  const __m256d av = _mm256_set1_pd(a);
  int k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d acc = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(y + k, acc);
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

constexpr KernelTable kAvx2 = {
    "avx2",   row_min_offdiag, left_multiply, right_multiply,
    bilinear, accumulate_beaten, axpy,
};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace pplearn::kernels
