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
#include <numeric>

#include "fiscalopt/lp/solver.hpp"
#include "simplex.hpp"

namespace fiscalopt::lp {

namespace {

constexpr std::size_t kFilterLimit = 2000;

LinearProblem feasibility_version(const LinearProblem& problem) {
  LinearProblem out = problem;
  out.objective_offset = 0.0;
  for (auto& c : out.mutable_columns()) {
    c.cost = 0.0;
    c.binary = false;
  }
  return out;
}

/// False when the problem is proven infeasible; fills the certificate.
bool feasible(const LinearProblem& problem, const SolverOptions& options,
              std::vector<int>* certificate) {
  detail::SimplexSolver solver(problem, options);
  std::vector<double> lower, upper;
  for (const auto& c : problem.columns()) {
    lower.push_back(c.lower);
    upper.push_back(c.upper);
  }
  const auto run = solver.solve(lower, upper, nullptr, options.iteration_limit, std::nullopt);
  if (run.status != Status::Infeasible) return true;
  if (certificate) *certificate = run.certificate;
  return false;
}

LinearProblem subsystem(const LinearProblem& problem, const std::vector<int>& keep) {
  std::vector<char> kept(problem.rows().size(), 0);
  for (int i : keep) kept[i] = 1;
  std::vector<int> drop;
  for (int i = 0; i < problem.row_count(); ++i) {
    if (!kept[i]) drop.push_back(i);
  }
  return problem.without_rows(drop);
}

/// Shrinks an infeasible row subset to an irreducible one.
std::vector<int> deletion_filter(const LinearProblem& problem, std::vector<int> rows,
                                 const SolverOptions& options) {
  for (std::size_t at = 0; at < rows.size();) {
    std::vector<int> trial = rows;
    trial.erase(trial.begin() + static_cast<long>(at));
    if (!feasible(subsystem(problem, trial), options, nullptr)) {
      rows = std::move(trial);
    } else {
      ++at;
    }
  }
  return rows;
}

}  // namespace

std::vector<int> find_conflict(const LinearProblem& problem, const SolverOptions& options) {
  LinearProblem rest = feasibility_version(problem);
  std::vector<int> original(problem.rows().size());
  std::iota(original.begin(), original.end(), 0);
  std::vector<int> conflict;
  for (int round = 0; round < 64; ++round) {
    std::vector<int> certificate;
    if (feasible(rest, options, &certificate)) break;
    std::vector<int> rows = certificate;
    if (rows.size() <= kFilterLimit) {
      if (feasible(subsystem(rest, rows), options, nullptr)) {
        // The certificate lost accuracy; fall back to every row.
        rows.resize(rest.rows().size());
        std::iota(rows.begin(), rows.end(), 0);
      }
      if (rows.size() <= kFilterLimit) rows = deletion_filter(rest, rows, options);
    }
    if (rows.empty()) break;  // bounds alone are contradictory
    for (int i : rows) conflict.push_back(original[i]);
    std::vector<int> next_original;
    std::vector<char> gone(original.size(), 0);
    for (int i : rows) gone[i] = 1;
    for (std::size_t i = 0; i < original.size(); ++i) {
      if (!gone[i]) next_original.push_back(original[i]);
    }
    rest = rest.without_rows(rows);
    original = std::move(next_original);
  }
  std::sort(conflict.begin(), conflict.end());
  return conflict;
}

}  // namespace fiscalopt::lp
