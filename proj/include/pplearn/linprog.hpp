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

// Small dense linear programs in equality form,
//
//   minimize c^T x  subject to  A x = b,  x >= 0,
//
// solved with a two-phase tableau simplex. Intended for problems with at most
// a few dozen rows and a few thousand columns.

#ifndef PPLEARN_LINPROG_HPP_
#define PPLEARN_LINPROG_HPP_

#include <string_view>
#include <vector>

namespace pplearn::lp {

struct Problem {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // rows x cols, row-major
  std::vector<double> b;  // rows
  std::vector<double> c;  // cols

  Problem(int rows, int cols);
  double& at(int r, int col) { return a[static_cast<std::size_t>(r) * cols + col]; }
  double at(int r, int col) const { return a[static_cast<std::size_t>(r) * cols + col]; }
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(Status s);

struct Options {
  // Phase one declares infeasibility when the artificial mass exceeds this.
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-11;
  double optimality_tol = 1e-12;
  int max_iterations = 50000;
  // With false, phase two is skipped and the first feasible vertex returned.
  bool optimize = true;
};

struct Result {
  Status status = Status::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  // max_r |(A x - b)_r| of the returned x.
  double residual = 0.0;
  // Sum of artificial variables at the end of phase one.
  double infeasibility = 0.0;
  int iterations = 0;
};

Result solve(const Problem& problem, const Options& options = {});

}  // namespace pplearn::lp

#endif  // PPLEARN_LINPROG_HPP_
