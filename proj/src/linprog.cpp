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

#include "pplearn/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pplearn/error.hpp"

namespace pplearn::lp {

Problem::Problem(int rows_, int cols_)
    : rows(rows_),
      cols(cols_),
      a(static_cast<std::size_t>(rows_) * cols_, 0.0),
      b(rows_, 0.0),
      c(cols_, 0.0) {}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

// Dantzig pricing until this many consecutive degenerate pivots, then Bland's
// rule for the rest of the phase so the method cannot cycle.
constexpr int kDegenerateSwitch = 50;

class Tableau {
 public:
  Tableau(const Problem& p)
      : rows_(p.rows), structural_(p.cols), width_(p.cols + p.rows + 1),
        t_(static_cast<std::size_t>(p.rows + 1) * width_, 0.0), basis_(p.rows) {
    for (int r = 0; r < rows_; ++r) {
      const double sign = p.b[r] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < structural_; ++j) at(r, j) = sign * p.at(r, j);
      at(r, structural_ + r) = 1.0;
      at(r, rhs()) = sign * p.b[r];
      basis_[r] = structural_ + r;
    }
  }

  double& at(int r, int j) { return t_[static_cast<std::size_t>(r) * width_ + j]; }
  double at(int r, int j) const { return t_[static_cast<std::size_t>(r) * width_ + j]; }
  int rhs() const { return width_ - 1; }
  int obj() const { return rows_; }
  bool is_artificial(int j) const { return j >= structural_ && j < structural_ + rows_; }

  void set_phase_one_objective() {
    for (int j = 0; j < width_; ++j) at(obj(), j) = 0.0;
    for (int r = 0; r < rows_; ++r) {
      for (int j = 0; j < structural_; ++j) at(obj(), j) -= at(r, j);
      at(obj(), rhs()) -= at(r, rhs());
    }
  }

  void set_phase_two_objective(const std::vector<double>& c) {
    for (int j = 0; j < width_; ++j) at(obj(), j) = j < structural_ ? c[j] : 0.0;
    for (int r = 0; r < rows_; ++r) {
      const int bj = basis_[r];
      const double cb = bj < structural_ ? c[bj] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j < width_; ++j) at(obj(), j) -= cb * at(r, j);
    }
  }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int j = 0; j < width_; ++j) at(pr, j) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      double* row = &at(r, 0);
      const double* prow = &at(pr, 0);
      for (int j = 0; j < width_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    basis_[pr] = pc;
  }

  // Returns the status of the phase; entering columns limited to
  // `allow_artificial` || !is_artificial.
  Status run(const Options& opt, bool allow_artificial, int& iterations) {
    int degenerate = 0;
    bool bland = false;
    while (true) {
      if (iterations >= opt.max_iterations) return Status::kIterationLimit;
      int enter = -1;
      double best = -opt.optimality_tol;
      const int limit = allow_artificial ? structural_ + rows_ : structural_;
      for (int j = 0; j < limit; ++j) {
        const double d = at(obj(), j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return Status::kOptimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= opt.pivot_tol) continue;
        const double ratio = std::max(0.0, at(r, rhs())) / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && leave >= 0 && basis_[r] < basis_[leave])) {
          if (ratio < best_ratio) best_ratio = ratio;
          leave = r;
        }
      }
      if (leave < 0) return Status::kUnbounded;

      degenerate = best_ratio <= 1e-12 ? degenerate + 1 : 0;
      if (degenerate > kDegenerateSwitch) bland = true;
      pivot(leave, enter);
      ++iterations;
    }
  }

  // Pivots basic artificials out where a structural column allows it. Rows
  // with no usable structural entry are redundant and keep their artificial.
  void expel_artificials(double pivot_tol) {
    for (int r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      int col = -1;
      double best = pivot_tol;
      for (int j = 0; j < structural_; ++j) {
        if (std::abs(at(r, j)) > best) {
          best = std::abs(at(r, j));
          col = j;
        }
      }
      if (col >= 0) pivot(r, col);
    }
  }

  std::vector<double> solution() const {
    std::vector<double> x(structural_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) x[basis_[r]] = std::max(0.0, at(r, rhs()));
    }
    return x;
  }

  double artificial_mass() const {
    double total = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (is_artificial(basis_[r])) total += std::max(0.0, at(r, rhs()));
    }
    return total;
  }

 private:
  int rows_;
  int structural_;
  int width_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

void finish(const Problem& p, Result& out) {
  out.objective = 0.0;
  for (int j = 0; j < p.cols; ++j) out.objective += p.c[j] * out.x[j];
  out.residual = 0.0;
  for (int r = 0; r < p.rows; ++r) {
    double acc = -p.b[r];
    for (int j = 0; j < p.cols; ++j) acc += p.at(r, j) * out.x[j];
    out.residual = std::max(out.residual, std::abs(acc));
  }
}

}  // namespace

Result solve(const Problem& problem, const Options& options) {
  if (problem.rows < 0 || problem.cols < 1 ||
      problem.a.size() != static_cast<std::size_t>(problem.rows) * problem.cols ||
      static_cast<int>(problem.b.size()) != problem.rows ||
      static_cast<int>(problem.c.size()) != problem.cols) {
    throw ValidationError("malformed linear program");
  }
  Result out;
  Tableau tab(problem);
  tab.set_phase_one_objective();
  Status s = tab.run(options, /*allow_artificial=*/true, out.iterations);
  out.infeasibility = tab.artificial_mass();
  if (s != Status::kOptimal || out.infeasibility > options.feasibility_tol) {
    out.status = s == Status::kOptimal ? Status::kInfeasible : s;
    out.x = tab.solution();
    finish(problem, out);
    return out;
  }
  tab.expel_artificials(options.pivot_tol);
  if (options.optimize) {
    tab.set_phase_two_objective(problem.c);
    s = tab.run(options, /*allow_artificial=*/false, out.iterations);
  }
  out.status = s;
  out.x = tab.solution();
  finish(problem, out);
  return out;
}

}  // namespace pplearn::lp
