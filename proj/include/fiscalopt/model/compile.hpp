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
#include "fiscalopt/model/layout.hpp"
#include "fiscalopt/model/reform_spec.hpp"

namespace fiscalopt::model {

/// Results of earlier stages a staged objective depends on.
struct CompileContext {
  std::optional<double> first_stage_optimum;
};

/// Where a row of the compiled problem came from.
struct RowOrigin {
  int constraint = -1;  // index into ReformSpec::constraints; -1 for generated rows
  std::string unit;     // taxpayer or household id, when per unit
};

struct CompiledProblem {
  lp::LinearProblem problem;
  std::shared_ptr<const Layout> layout;
  std::vector<CoefficientRow> rows;  // per taxpayer
  std::vector<RowOrigin> origins;    // per problem row
  /// Indicator column of each layout variable, or -1.
  std::vector<int> indicators;
  /// Weighted revenue loss = loss_offset - sum_j loss_weights[j] * x[j].
  double loss_offset = 0.0;
  std::vector<double> loss_weights;
  double budget_tolerance = 0.0;  // tau for a neutral budget

  /// Layout variable values of a solution, with indicator-off variables
  /// snapped to zero.
  std::vector<double> values(const lp::Solution& solution) const;
  double revenue_loss(const std::vector<double>& values) const;
};

/// Lowers a reform of `code` on `population` to a linear or mixed-integer
/// problem. Throws CompileError for specs that do not fit the inputs and
/// StagedSolveError for a lexicographic objective without its first stage.
CompiledProblem compile(const tax::TaxCode& code, const io::Population& population,
                        const ReformSpec& spec, const CompileContext& context = {});

/// Name of a constraint in row names and conflict reports: its own name, or
/// its kind and position.
std::string constraint_label(const ConstraintSpec& constraint, std::size_t index);

/// The spec with a lexicographic objective replaced by its first stage.
ReformSpec first_stage(const ReformSpec& spec);

/// Re-checks every guarantee of `spec` by evaluating the materialized
/// reform directly, without the compiled rows. Returns one message per
/// violation larger than tol * max(1, |bound|).
std::vector<std::string> audit_reform(const CompiledProblem& compiled,
                                      const io::Population& population, const ReformSpec& spec,
                                      const std::vector<double>& values, double tol = 1e-6);

/// Active rules per topic, counted on a code: a rule is active when any of
/// its parameters is non-zero, and active income-dependently when it is
/// income dependent and any of its rates is non-zero.
struct CensusRow {
  std::string topic;
  int active = 0;
  int income_dependent = 0;
  bool excluded = false;  // every rule of the topic is frozen
};

struct Census {
  std::vector<CensusRow> topics;
  int active = 0;
  int income_dependent = 0;
};

Census rule_census(const tax::TaxCode& code, double threshold = 1e-7);
/// As above, with the rules `spec` freezes excluded like frozen rules.
Census rule_census(const tax::TaxCode& code, const ReformSpec& spec, double threshold = 1e-7);

}  // namespace fiscalopt::model
