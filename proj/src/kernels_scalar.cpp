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

#include <algorithm>
#include <limits>

#include "kernels_internal.hpp"

namespace pplearn::kernels {
namespace {

void row_min_offdiag(const double* p, int m, double* out) {
  for (int i = 0; i < m; ++i) {
    const double* row = p + static_cast<long>(i) * m;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (j != i) best = std::min(best, row[j]);
    }
    out[i] = best;
  }
}

void left_multiply(const double* x, const double* p, int m, double* out) {
  std::fill(out, out + m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = p + static_cast<long>(i) * m;
    for (int j = 0; j < m; ++j) out[j] += x[i] * row[j];
  }
}

void right_multiply(const double* p, const double* y, int m, double* out) {
  for (int i = 0; i < m; ++i) {
    const double* row = p + static_cast<long>(i) * m;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += row[j] * y[j];
    out[i] = acc;
  }
}

double bilinear(const double* x, const double* p, const double* y, int m) {
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double* row = p + static_cast<long>(i) * m;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += row[j] * y[j];
    total += x[i] * acc;
  }
  return total;
}

void accumulate_beaten(const double* rank, double rank_i, double w, double* row,
                       int m) {
  for (int j = 0; j < m; ++j) {
    if (rank[j] > rank_i) row[j] += w;
  }
}

void axpy(double a, const double* x, double* y, int n) {
  for (int k = 0; k < n; ++k) y[k] += a * x[k];
}

constexpr KernelTable kScalar = {
    "scalar",     row_min_offdiag, left_multiply, right_multiply,
    bilinear,     accumulate_beaten, axpy,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace pplearn::kernels
