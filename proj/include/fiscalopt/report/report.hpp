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

#include <cstddef>
#include <string>
#include <vector>

#include "fiscalopt/io/population.hpp"
#include "fiscalopt/lp/problem.hpp"
#include "fiscalopt/model/compile.hpp"
#include "fiscalopt/report/documents.hpp"

namespace fiscalopt::report {

struct ReportOptions {
  /// Per-taxpayer records kept. Larger populations are sampled at an even
  /// stride; revenue and census figures always cover everyone.
  std::size_t max_records = 50'000;
  /// Income for net income and the marginal scatter.
  std::string income_input = "income_before_tax";
};

struct RateLine {
  std::string name;
  std::string kind;  // rate, lump, scale
  std::string input;
  std::string rule;
  std::string cell;
  double bracket_lower = 0.0;  // rates only
  double bracket_upper = 0.0;
  double current = 0.0;
  double reformed = 0.0;
};

struct TaxpayerLine {
  std::string id;
  double weight = 1.0;
  double income = 0.0;
  double old_tax = 0.0;
  double new_tax = 0.0;
  double old_net = 0.0;
  double new_net = 0.0;
  double old_marginal = 0.0;
  double new_marginal = 0.0;
};

struct Report {
  std::string name;
  std::string status;
  double objective = 0.0;
  std::vector<RateLine> rates;
  std::vector<TaxpayerLine> taxpayers;
  std::size_t taxpayer_count = 0;
  bool truncated = false;  // taxpayers is a sample
  double revenue_before = 0.0;  // weighted
  double revenue_after = 0.0;
  double revenue_loss = 0.0;
  model::Census census_before;
  model::Census census_after;
  /// Guarantees the reformed code fails when evaluated directly; empty for a
  /// sound solution.
  std::vector<std::string> audit;
};

/// Summarizes an optimal solution of `compiled`. Throws Error for any
/// other status: reports are never built from infeasible or partial
/// solutions.
Report build_report(const model::CompiledProblem& compiled, const io::Population& population,
                    const model::ReformSpec& spec, const lp::Solution& solution,
                    const ReportOptions& options = {});

Json report_to_json(const Report& report);
Json census_to_json(const model::Census& census);

/// Counts, weights, input ranges and characteristic values of a
/// population. With a code, also how far the recorded current taxes are
/// from the code's own evaluation.
Json population_summary(const io::Population& population, const tax::TaxCode* code = nullptr);

/// Per-taxpayer records as comma-separated text with a header line.
std::string taxpayers_csv(const Report& report);
/// Rate table as comma-separated text with a header line.
std::string rates_csv(const Report& report);
/// Topic table with Active and Inc. dep. columns, aligned for a terminal.
std::string census_table(const model::Census& census);

}  // namespace fiscalopt::report
