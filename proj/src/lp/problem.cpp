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

#include "fiscalopt/lp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fiscalopt/error.hpp"

namespace fiscalopt::lp {

int LinearProblem::add_column(std::string name, double lower, double upper, double cost,
                              bool binary) {
  columns_.push_back(Column{std::move(name), lower, upper, cost, binary});
  return static_cast<int>(columns_.size()) - 1;
}

int LinearProblem::add_row(std::string name, std::vector<Entry> entries, RowSense sense,
                           double rhs) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.column < b.column; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().column == e.column) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
  rows_.push_back(Row{std::move(name), std::move(merged), sense, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

std::size_t LinearProblem::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.entries.size();
  return n;
}

bool LinearProblem::has_binaries() const {
  return std::any_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.binary; });
}

LinearProblem LinearProblem::without_rows(const std::vector<int>& drop) const {
  std::vector<char> gone(rows_.size(), 0);
  for (int i : drop) gone.at(static_cast<std::size_t>(i)) = 1;
  LinearProblem out;
  out.name = name;
  out.objective_offset = objective_offset;
  out.columns_ = columns_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!gone[i]) out.rows_.push_back(rows_[i]);
  }
  return out;
}

void LinearProblem::validate() const {
  std::vector<std::string> issues;
  const int n = column_count();
  for (const auto& c : columns_) {
    if (std::isnan(c.lower) || std::isnan(c.upper) || c.lower > c.upper) {
      issues.push_back("column '" + c.name + "' has inconsistent bounds");
    }
    if (c.lower == kInf || c.upper == -kInf) {
      issues.push_back("column '" + c.name + "' has an infinite fixed bound");
    }
    if (!std::isfinite(c.cost)) issues.push_back("column '" + c.name + "' has a non-finite cost");
    if (c.binary && (c.lower < 0.0 || c.upper > 1.0)) {
      issues.push_back("binary column '" + c.name + "' has bounds outside [0, 1]");
    }
  }
  for (const auto& r : rows_) {
    if (!std::isfinite(r.rhs)) issues.push_back("row '" + r.name + "' has a non-finite rhs");
    for (const auto& e : r.entries) {
      if (e.column < 0 || e.column >= n) {
        issues.push_back("row '" + r.name + "' references column " + std::to_string(e.column));
      } else if (!std::isfinite(e.value)) {
        issues.push_back("row '" + r.name + "' has a non-finite coefficient");
      }
    }
  }
  if (!std::isfinite(objective_offset)) issues.push_back("non-finite objective offset");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

double LinearProblem::objective_value(const std::vector<double>& x) const {
  double v = objective_offset;
  for (std::size_t j = 0; j < columns_.size(); ++j) v += columns_[j].cost * x[j];
  return v;
}

double LinearProblem::activity(int row, const std::vector<double>& x) const {
  double v = 0.0;
  for (const auto& e : rows_.at(static_cast<std::size_t>(row)).entries) {
    v += e.value * x[static_cast<std::size_t>(e.column)];
  }
  return v;
}

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration_limit";
  }
  return "?";
}

}  // namespace fiscalopt::lp
