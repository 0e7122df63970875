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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fiscalopt/io/population.hpp"
#include "fiscalopt/lp/problem.hpp"
#include "fiscalopt/model/compile.hpp"
#include "fiscalopt/model/reform_spec.hpp"
#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::scenarios {

/// One row of a conflict set, traced back to the guarantee that made it.
struct ConflictRow {
  std::string row;
  std::string constraint;  // spec constraint name, or the generated row's name
  std::string unit;        // taxpayer or household, when per unit
};

/// A compiled and solved reform.
struct Outcome {
  model::ReformSpec spec;
  std::shared_ptr<const model::CompiledProblem> compiled;
  lp::Solution solution;
  std::vector<double> values;  // layout variables; empty unless optimal
  /// Optimum of the first stage of a lexicographic objective.
  std::optional<double> first_stage_optimum;
  std::vector<ConflictRow> conflict;
  /// Independent re-check of every guarantee; empty for a sound solution.
  std::vector<std::string> audit;

  bool optimal() const { return solution.status == lp::Status::Optimal; }
  double revenue_loss() const;
  tax::TaxCode reformed_code() const;
  /// Distinct constraint names of the conflict set, in row order.
  std::vector<std::string> conflict_constraints() const;
};

/// Compiles and solves `spec`. A lexicographic objective is solved in two
/// stages; an infeasible first stage is returned as is.
Outcome solve_reform(const tax::TaxCode& code, const io::Population& population,
                     const model::ReformSpec& spec, const lp::SolverOptions& options = {});

struct Recovery {
  Outcome outcome;
  int variables = 0;
  int rank = 0;
  /// The coefficient matrix lacks full column rank: the taxes are matched
  /// but the rates are not identified by this population.
  bool rank_deficient = false;
};

/// Recovers the rates of `code` from the current taxes of `population` with
/// a tight guarantee for every taxpayer and minimal revenue loss. The
/// structural parts of `structure` (rule modes, supports, tied inputs,
/// merged dimensions) are kept; its constraints and objective are replaced
/// and every variable is left free.
Recovery recover(const tax::TaxCode& code, const io::Population& population,
                 const model::ReformSpec& structure = {}, const lp::SolverOptions& options = {});

/// Stage one minimizes revenue loss under `spec`'s guarantees; stage two
/// minimizes the rule count (income-dependent rules weighted
/// `income_dependent_weight`) with the loss held within `slack` of the
/// stage-one optimum.
struct TwoStep {
  Outcome first;
  Outcome second;
  model::Census before;
  model::Census after_first;
  model::Census after_second;
};

TwoStep two_step_reform(const tax::TaxCode& code, const io::Population& population,
                        const model::ReformSpec& spec, double slack,
                        const lp::SolverOptions& options = {});

/// `spec` with every marginal-pressure and rate cap set to `cap`. Without
/// either kind of cap a marginal cap for everyone is added.
model::ReformSpec with_cap(model::ReformSpec spec, double cap);

struct FrontierRow {
  double cap = 0.0;
  std::string status;
  double loss = 0.0;  // minimal weighted revenue loss; NaN when not optimal
  int active = 0;     // rule census of the final solution
  int income_dependent = 0;
  std::vector<std::string> conflict;
  std::shared_ptr<const Outcome> outcome;  // final stage of the solve
};

struct Frontier {
  std::vector<FrontierRow> rows;
  /// Minimal loss never rises with the cap, within tolerance; infeasible
  /// caps count as an infinite loss.
  bool monotone = true;
};

/// Solves `with_cap(spec, cap)` for every cap, concurrently on up to
/// `threads` workers (0: hardware concurrency). Caps must be ascending.
/// Infeasible caps are marked in their row rather than failing the sweep.
Frontier sweep_frontier(const tax::TaxCode& code, const io::Population& population,
                        const model::ReformSpec& spec, const std::vector<double>& caps,
                        const lp::SolverOptions& options = {}, unsigned threads = 0);

}  // namespace fiscalopt::scenarios
