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

// Bradley-Terry maximum likelihood on a pairwise preference matrix.
//
// The likelihood is concave and invariant under a common shift, so the
// ascent runs on the sum-zero subspace (the gradient always sums to zero).
// Directions are Newton steps, i.e. the gradient preconditioned by the
// negated Hessian plus 11^T/M (which fixes the shift and keeps the system
// positive definite). Plain gradient steps stall on nearly deterministic
// matrices long before the 1e-10 gradient tolerance.
// The maximizer exists iff the "beats with positive probability" digraph is
// strongly connected. Otherwise the components are totally ordered, each is
// fitted separately, and the blocks are stacked inside the clamp range.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pplearn/rules.hpp"

namespace pplearn {
namespace {

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
}

double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

std::vector<double> gradient(const PreferenceMatrix& p, std::span<const double> r) {
  const int m = p.m();
  std::vector<double> g(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = p(i, j) - sigmoid(r[i] - r[j]);
      g[i] += d;
      g[j] -= d;
    }
  }
  return g;
}

// Solves (S + 11^T/M) x = g where S is the BT Fisher matrix at r.
std::vector<double> newton_direction(const PreferenceMatrix& p, std::span<const double> r,
                                     std::span<const double> g) {
  const int m = p.m();
  const double shift = 1.0 / m;
  std::vector<double> a(static_cast<std::size_t>(m) * (m + 1), shift);
  auto at = [&](int i, int j) -> double& { return a[i * (m + 1) + j]; };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double s = sigmoid(r[i] - r[j]);
      const double w = s * (1.0 - s);
      at(i, i) += w;
      at(j, j) += w;
      at(i, j) -= w;
      at(j, i) -= w;
    }
    at(i, m) = g[i];
  }
  // Gaussian elimination with partial pivoting.
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int i = c + 1; i < m; ++i) {
      if (std::abs(at(i, c)) > std::abs(at(piv, c))) piv = i;
    }
    if (piv != c) {
      for (int j = c; j <= m; ++j) std::swap(at(c, j), at(piv, j));
    }
    const double d = at(c, c);
    if (!(std::abs(d) > 1e-300)) return {g.begin(), g.end()};
    for (int i = c + 1; i < m; ++i) {
      const double f = at(i, c) / d;
      if (f == 0.0) continue;
      for (int j = c; j <= m; ++j) at(i, j) -= f * at(c, j);
    }
  }
  std::vector<double> x(m);
  for (int i = m - 1; i >= 0; --i) {
    double v = at(i, m);
    for (int j = i + 1; j < m; ++j) v -= at(i, j) * x[j];
    x[i] = v / at(i, i);
  }
  for (double v : x) {
    if (!std::isfinite(v)) return {g.begin(), g.end()};
  }
  return x;
}

double inf_norm(std::span<const double> v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

void center(std::vector<double>& r) {
  if (r.empty()) return;
  const double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
  for (double& x : r) x -= mean;
}

BtFit ascend(const PreferenceMatrix& p, const BtOptions& opt) {
  const int m = p.m();
  BtFit fit;
  fit.rewards.assign(m, 0.0);
  fit.log_likelihood = bt_log_likelihood(p, fit.rewards);
  std::vector<double> g = gradient(p, fit.rewards);
  fit.gradient_norm = inf_norm(g);
  double step = opt.initial_step;
  std::vector<double> trial(m);
  std::vector<double> dir = newton_direction(p, fit.rewards, g);
  while (fit.gradient_norm >= opt.gradient_tol) {
    if (fit.iterations >= opt.max_iterations || step < 1e-300) {
      center(fit.rewards);
      throw BtNonConvergence("Bradley-Terry ascent did not converge", fit);
    }
    ++fit.iterations;
    for (int i = 0; i < m; ++i) trial[i] = fit.rewards[i] + step * dir[i];
    const double ll = bt_log_likelihood(p, trial);
    std::vector<double> g_trial = gradient(p, trial);
    const double norm_trial = inf_norm(g_trial);
    if (ll >= fit.log_likelihood || norm_trial < fit.gradient_norm * 0.5) {
      fit.rewards = trial;
      fit.log_likelihood = ll;
      g = std::move(g_trial);
      fit.gradient_norm = norm_trial;
      dir = newton_direction(p, fit.rewards, g);
      step = opt.initial_step;
    } else {
      step *= 0.5;
    }
  }
  center(fit.rewards);
  fit.converged = true;
  return fit;
}

// Strongly connected components of i -> j iff p(i, j) > 0, listed from the
// block that beats everything else downward.
std::vector<std::vector<int>> ordered_components(const PreferenceMatrix& p) {
  const int m = p.m();
  std::vector<char> reach(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) {
    reach[i * m + i] = 1;
    for (int j = 0; j < m; ++j) {
      if (i != j && p(i, j) > 0.0) reach[i * m + j] = 1;
    }
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      if (!reach[i * m + k]) continue;
      for (int j = 0; j < m; ++j) {
        if (reach[k * m + j]) reach[i * m + j] = 1;
      }
    }
  }
  std::vector<int> block(m, -1);
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < m; ++i) {
    if (block[i] >= 0) continue;
    blocks.emplace_back();
    for (int j = 0; j < m; ++j) {
      if (reach[i * m + j] && reach[j * m + i]) {
        block[j] = static_cast<int>(blocks.size()) - 1;
        blocks.back().push_back(j);
      }
    }
  }
  // Between components every edge points one way, so the number of
  // alternatives a block reaches orders the blocks.
  auto reached = [&](const std::vector<int>& b) {
    int n = 0;
    for (int j = 0; j < m; ++j) n += reach[b.front() * m + j];
    return n;
  };
  std::sort(blocks.begin(), blocks.end(),
            [&](const auto& a, const auto& b) { return reached(a) > reached(b); });
  return blocks;
}

BtFit stacked_fit(const PreferenceMatrix& p, const std::vector<std::vector<int>>& blocks,
                  const BtOptions& opt) {
  const int m = p.m();
  const int nb = static_cast<int>(blocks.size());
  const double inner = 0.8 * opt.reward_clamp;
  const double spacing = 2.0 * inner / (nb - 1);
  const double spread = std::min(0.2 * opt.reward_clamp, 0.4 * spacing);
  BtFit out;
  out.rewards.assign(m, 0.0);
  for (int b = 0; b < nb; ++b) {
    const auto& members = blocks[b];
    const double level = inner - spacing * b;
    std::vector<double> local(members.size(), 0.0);
    if (members.size() > 1) {
      const int k = static_cast<int>(members.size());
      PreferenceMatrix sub(k);
      for (int a = 0; a < k; ++a) {
        for (int c = 0; c < k; ++c) sub(a, c) = p(members[a], members[c]);
      }
      BtFit f = ascend(sub, opt);
      out.iterations += f.iterations;
      local = f.rewards;
      const double widest = inf_norm(local);
      if (widest > spread) {
        for (double& x : local) x *= spread / widest;
      }
    }
    for (std::size_t a = 0; a < members.size(); ++a) out.rewards[members[a]] = level + local[a];
  }
  center(out.rewards);
  const double widest = inf_norm(out.rewards);
  if (widest > opt.reward_clamp) {
    for (double& x : out.rewards) x *= opt.reward_clamp / widest;
  }
  out.log_likelihood = bt_log_likelihood(p, out.rewards);
  out.gradient_norm = inf_norm(gradient(p, out.rewards));
  out.converged = false;
  out.diverged = true;
  return out;
}

}  // namespace

double bt_log_likelihood(const PreferenceMatrix& p, std::span<const double> rewards) {
  const int m = p.m();
  double ll = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = rewards[i] - rewards[j];
      if (p(i, j) > 0.0) ll += p(i, j) * log_sigmoid(d);
      if (p(j, i) > 0.0) ll += p(j, i) * log_sigmoid(-d);
    }
  }
  return ll;
}

BtFit fit_bt(const PreferenceMatrix& p, const BtOptions& options) {
  require_skew_symmetric(p);
  if (p.m() == 1) {
    BtFit fit;
    fit.rewards = {0.0};
    fit.converged = true;
    return fit;
  }
  auto blocks = ordered_components(p);
  if (blocks.size() == 1) return ascend(p, options);
  return stacked_fit(p, blocks, options);
}

}  // namespace pplearn
