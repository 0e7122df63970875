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

#include <vector>

#include "fiscalopt/lp/problem.hpp"

namespace fiscalopt::lp {

/// Solves the continuous relaxation (binary flags are ignored) with the
/// bounded primal simplex method. `warm` may carry the basis of a previous
/// solve of a problem with the same shape.
Solution solve_lp(const LinearProblem& problem, const SolverOptions& options = {},
                  const Basis* warm = nullptr);

/// Best-bound branch and bound over the binary columns. Branches on the most
/// fractional binary, lowest index first. Hitting the node or time limit
/// returns IterationLimit with the incumbent, if any.
Solution solve_milp(const LinearProblem& problem, const SolverOptions& options = {});

/// solve_milp when the problem has binaries, solve_lp otherwise.
Solution solve(const LinearProblem& problem, const SolverOptions& options = {});

/// Rows whose joint removal makes an infeasible problem feasible. Built from
/// irreducible infeasible subsystems found by a deletion filter over the
/// phase-one certificate; empty when the problem is feasible.
std::vector<int> find_conflict(const LinearProblem& problem, const SolverOptions& options = {});

}  // namespace fiscalopt::lp
