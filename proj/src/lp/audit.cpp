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

#include "fiscalopt/lp/audit.hpp"

#include <algorithm>
#include <cmath>

namespace fiscalopt::lp {

namespace {

void record(AuditReport& report, Violation::Kind kind, int index, const std::string& name,
            double value, double amount) {
  report.violations.push_back({kind, index, name, value, amount});
  report.max_violation = std::max(report.max_violation, amount);
}

}  // namespace

AuditReport audit_feasibility(const LinearProblem& problem, const std::vector<double>& x,
                              double tolerance) {
  AuditReport report;
  for (int j = 0; j < problem.column_count(); ++j) {
    const Column& c = problem.column(j);
    const double v = x.at(static_cast<std::size_t>(j));
    const double below = c.lower - v;
    const double above = v - c.upper;
    const double out = std::max(below, above);
    const double magnitude = std::max(std::isfinite(c.lower) ? std::abs(c.lower) : 0.0,
                                      std::isfinite(c.upper) ? std::abs(c.upper) : 0.0);
    if (out > tolerance * std::max(1.0, magnitude)) {
      record(report, Violation::Kind::Bound, j, c.name, v, out);
    }
    if (c.binary) {
      const double frac = std::abs(v - std::round(v));
      if (frac > tolerance) record(report, Violation::Kind::Integrality, j, c.name, v, frac);
    }
  }
  for (int i = 0; i < problem.row_count(); ++i) {
    const Row& r = problem.row(i);
    const double a = problem.activity(i, x);
    double out = 0.0;
    if (r.sense != RowSense::GreaterEqual) out = std::max(out, a - r.rhs);
    if (r.sense != RowSense::LessEqual) out = std::max(out, r.rhs - a);
    if (out > tolerance * std::max(1.0, std::abs(r.rhs))) {
      record(report, Violation::Kind::Row, i, r.name, a, out);
    }
  }
  return report;
}

AuditReport audit_optimality(const LinearProblem& problem, const Solution& solution,
                             double tolerance) {
  AuditReport report;
  const auto& x = solution.x;
  const auto& y = solution.duals;
  if (y.size() != problem.rows().size()) {
    record(report, Violation::Kind::Row, -1, "missing duals", 0.0, 1.0);
    return report;
  }
  double cmax = 1.0;
  for (const auto& c : problem.columns()) cmax = std::max(cmax, std::abs(c.cost));
  const double dual_tol = tolerance * cmax;

  std::vector<double> d(problem.columns().size());
  for (int j = 0; j < problem.column_count(); ++j) d[j] = problem.column(j).cost;
  for (int i = 0; i < problem.row_count(); ++i) {
    const Row& r = problem.row(i);
    for (const auto& e : r.entries) d[e.column] -= y[i] * e.value;
    const double a = problem.activity(i, x);
    const double primal_tol = tolerance * std::max(1.0, std::abs(r.rhs));
    const bool at_rhs = std::abs(a - r.rhs) <= primal_tol;
    double wrong = 0.0;
    if (!at_rhs) {
      wrong = std::abs(y[i]);
    } else if (r.sense == RowSense::LessEqual) {
      wrong = std::max(0.0, y[i]);
    } else if (r.sense == RowSense::GreaterEqual) {
      wrong = std::max(0.0, -y[i]);
    }
    if (wrong > dual_tol) record(report, Violation::Kind::Row, i, r.name, y[i], wrong);
  }
  for (int j = 0; j < problem.column_count(); ++j) {
    const Column& c = problem.column(j);
    const double scale = tolerance * std::max(1.0, std::abs(x[j]));
    double wrong = 0.0;
    if (x[j] > c.lower + scale) wrong = std::max(wrong, d[j]);
    if (x[j] < c.upper - scale) wrong = std::max(wrong, -d[j]);
    if (wrong > dual_tol) record(report, Violation::Kind::Bound, j, c.name, d[j], wrong);
  }
  return report;
}

}  // namespace fiscalopt::lp
