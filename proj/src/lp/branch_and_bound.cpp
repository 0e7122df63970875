// Copyright 2026 The fiscalopt Authors
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
#include <cmath>
#include <queue>

#include "fiscalopt/lp/solver.hpp"
#include "simplex.hpp"

namespace fiscalopt::lp {

namespace {

struct Node {
  double bound = 0.0;
  long id = 0;
  std::vector<double> lower, upper;
  std::vector<double> x;
  Basis basis;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

/// Most fractional binary, lowest index on ties; -1 when integral.
int branching_column(const std::vector<int>& binaries, const std::vector<double>& x,
                     double tolerance) {
  int best = -1;
  double best_score = tolerance;
  for (int j : binaries) {
    const double f = x[j] - std::floor(x[j]);
    const double score = std::min(f, 1.0 - f);
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

}  // namespace

Solution solve_milp(const LinearProblem& problem, const SolverOptions& options) {
  problem.validate();
  if (!problem.has_binaries()) return solve_lp(problem, options);
  const auto start = detail::Clock::now();
  const auto deadline = detail::deadline_from(options, start);
  detail::SimplexSolver solver(problem, options);

  std::vector<int> binaries;
  bool integral_objective = true;
  for (int j = 0; j < problem.column_count(); ++j) {
    const Column& c = problem.column(j);
    if (c.binary) {
      binaries.push_back(j);
      if (c.cost != std::round(c.cost)) integral_objective = false;
    } else if (c.cost != 0.0) {
      integral_objective = false;
    }
  }
  if (problem.objective_offset != std::round(problem.objective_offset)) {
    integral_objective = false;
  }

  Solution sol;
  long iterations = 0;
  long nodes = 0;
  auto run_lp = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                    const Basis* warm) {
    auto run = solver.solve(lo, hi, warm, options.iteration_limit - iterations, deadline);
    iterations += run.iterations;
    ++nodes;
    return run;
  };

  Node root;
  for (const auto& c : problem.columns()) {
    root.lower.push_back(c.lower);
    root.upper.push_back(c.upper);
  }
  auto root_run = run_lp(root.lower, root.upper, nullptr);
  auto finish = [&](Solution& s) {
    s.stats.iterations = iterations;
    s.stats.nodes = nodes;
    s.stats.seconds = std::chrono::duration<double>(detail::Clock::now() - start).count();
    return s;
  };
  if (root_run.status != Status::Optimal) {
    sol.status = root_run.status;
    sol.message = root_run.message;
    sol.x = root_run.x;
    sol.objective = problem.objective_value(sol.x);
    detail::fill_rows(problem, sol);
    if (sol.status == Status::Infeasible && options.compute_conflict) {
      sol.conflict = find_conflict(problem, options);
    }
    return finish(sol);
  }

  std::vector<double> incumbent;
  double incumbent_obj = kInf;
  Basis incumbent_basis;
  auto prunable = [&](double bound) {
    if (incumbent.empty()) return false;
    if (integral_objective) return std::ceil(bound - options.gap_tolerance) >= incumbent_obj;
    return bound >= incumbent_obj - options.gap_tolerance;
  };
  auto offer = [&](const std::vector<double>& x, double obj, const Basis& basis) {
    if (obj < incumbent_obj) {
      incumbent = x;
      incumbent_obj = obj;
      incumbent_basis = basis;
    }
  };

  // Rounding every fractional binary up keeps big-M rows satisfied.
  auto round_up = [&](const Node& node) {
    std::vector<double> lo = node.lower, hi = node.upper;
    for (int j : binaries) {
      const double v = std::ceil(node.x[j] - options.integrality_tolerance);
      lo[j] = hi[j] = std::clamp(v, node.lower[j], node.upper[j]);
    }
    auto run = run_lp(lo, hi, &node.basis);
    if (run.status == Status::Optimal) offer(run.x, run.objective, run.basis);
  };

  root.x = root_run.x;
  root.bound = root_run.objective;
  root.basis = root_run.basis;
  long next_id = 1;
  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  if (branching_column(binaries, root.x, options.integrality_tolerance) < 0) {
    offer(root.x, root.bound, root.basis);
  } else {
    round_up(root);
    open.push(std::move(root));
  }

  bool limit_hit = false;
  while (!open.empty()) {
    if (nodes >= options.node_limit || iterations >= options.iteration_limit ||
        (deadline && detail::Clock::now() > *deadline)) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (prunable(node.bound)) continue;
    const int j = branching_column(binaries, node.x, options.integrality_tolerance);
    for (double value : {0.0, 1.0}) {
      if (value < node.lower[j] || value > node.upper[j]) continue;
      Node child;
      child.id = next_id++;
      child.lower = node.lower;
      child.upper = node.upper;
      child.lower[j] = child.upper[j] = value;
      auto run = run_lp(child.lower, child.upper, &node.basis);
      if (run.status == Status::IterationLimit) {
        limit_hit = true;
        continue;
      }
      if (run.status != Status::Optimal || prunable(run.objective)) continue;
      child.x = std::move(run.x);
      child.bound = run.objective;
      child.basis = std::move(run.basis);
      if (branching_column(binaries, child.x, options.integrality_tolerance) < 0) {
        offer(child.x, child.bound, child.basis);
      } else {
        open.push(std::move(child));
      }
    }
  }

  double best_bound = incumbent.empty() ? kInf : incumbent_obj;
  if (!open.empty()) best_bound = std::min(best_bound, open.top().bound);
  sol.best_bound = best_bound;
  if (incumbent.empty()) {
    sol.status = limit_hit ? Status::IterationLimit : Status::Infeasible;
    sol.message = limit_hit ? "limit reached before an integer solution was found"
                            : "no assignment of the binaries is feasible";
    sol.x = root_run.x;
    sol.objective = problem.objective_value(sol.x);
    detail::fill_rows(problem, sol);
    return finish(sol);
  }

  // Fix the binaries at their rounded values and re-solve to polish the
  // continuous part.
  std::vector<double> lo, hi;
  for (const auto& c : problem.columns()) {
    lo.push_back(c.lower);
    hi.push_back(c.upper);
  }
  for (int j : binaries) lo[j] = hi[j] = std::round(incumbent[j]);
  auto polish = solver.solve(lo, hi, &incumbent_basis, options.iteration_limit, std::nullopt);
  sol.x = polish.status == Status::Optimal ? polish.x : incumbent;
  for (int j : binaries) sol.x[j] = std::round(sol.x[j]);
  detail::snap_to_bounds(problem, sol.x);
  sol.objective = problem.objective_value(sol.x);
  sol.basis = polish.basis;
  sol.status = limit_hit ? Status::IterationLimit : Status::Optimal;
  if (limit_hit) sol.message = "limit reached; returning the incumbent";
  if (!limit_hit) sol.best_bound = std::min(sol.best_bound, sol.objective);
  detail::fill_rows(problem, sol);
  return finish(sol);
}

}  // namespace fiscalopt::lp
