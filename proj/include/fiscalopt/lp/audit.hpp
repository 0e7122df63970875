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

#include <string>
#include <vector>

#include "fiscalopt/lp/problem.hpp"

namespace fiscalopt::lp {

struct Violation {
  enum class Kind { Row, Bound, Integrality };
  Kind kind = Kind::Row;
  int index = 0;
  std::string name;
  double value = 0.0;   // activity or column value
  double amount = 0.0;  // how far outside the allowed range
};

struct AuditReport {
  std::vector<Violation> violations;
  double max_violation = 0.0;

  bool ok() const { return violations.empty(); }
};

/// Re-checks every row, bound and binary of `x` directly from the problem
/// data. A row passes when it is violated by at most
/// tolerance * max(1, |rhs|).
AuditReport audit_feasibility(const LinearProblem& problem, const std::vector<double>& x,
                              double tolerance = 1e-6);

/// Checks the optimality conditions of an LP solution from its row duals:
/// dual signs on active rows, zero duals on inactive rows and reduced-cost
/// signs on columns away from their bounds. Reduced costs are recomputed
/// from the duals, not taken from the solution.
AuditReport audit_optimality(const LinearProblem& problem, const Solution& solution,
                             double tolerance = 1e-6);

}  // namespace fiscalopt::lp
