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

#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fiscalopt/lp/problem.hpp"

namespace fiscalopt::lp::detail {

using Clock = std::chrono::steady_clock;

struct LpRun {
  Status status = Status::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;  // includes the offset
  Basis basis;
  long iterations = 0;
  /// Infeasible: rows whose phase-one multipliers prove infeasibility.
  std::vector<int> certificate;
  std::string message;
};

/// Bounded primal simplex on  A x - r = 0,  l <= x <= u,  rl <= r <= ru.
///
/// The basis is kept implicitly as (basic columns S, tight rows T) with
/// |S| = |T|; only A[T, S] is factorized, so the work per iteration is one
/// small dense LU plus a few passes over the nonzeros. Phase one minimizes
/// the sum of infeasibilities of the basic variables.
class SimplexSolver {
 public:
  SimplexSolver(const LinearProblem& problem, const SolverOptions& options);
  ~SimplexSolver();
  SimplexSolver(const SimplexSolver&) = delete;
  SimplexSolver& operator=(const SimplexSolver&) = delete;

  /// Solves with column bounds replaced by `lower` / `upper`.
  LpRun solve(const std::vector<double>& lower, const std::vector<double>& upper,
              const Basis* warm, long iteration_budget,
              std::optional<Clock::time_point> deadline) const;

  bool dense() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

/// Row duals and column reduced costs of an optimal basis, computed on the
/// unscaled data.
void compute_duals(const LinearProblem& problem, const Basis& basis,
                   std::vector<double>& duals, std::vector<double>& reduced_costs);

/// Fills row_activity and row_slack from solution.x.
void fill_rows(const LinearProblem& problem, Solution& solution);

/// Moves values within 1e-9 of a bound onto the bound.
void snap_to_bounds(const LinearProblem& problem, std::vector<double>& x);

std::optional<Clock::time_point> deadline_from(const SolverOptions& options,
                                               Clock::time_point start);

}  // namespace fiscalopt::lp::detail
