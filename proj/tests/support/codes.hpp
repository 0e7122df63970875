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

#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::testing {

inline tax::TaxRule bracket_rule(std::string id, std::string input, std::vector<double> cutoffs,
                                 std::vector<double> rates) {
  tax::TaxRule r;
  r.id = std::move(id);
  r.kind = tax::RuleKind::Bracket;
  r.input = std::move(input);
  r.params[{}] = tax::RuleParams{tax::Support(std::move(cutoffs)), std::move(rates)};
  return r;
}

inline tax::TaxRule benefit_rule(std::string id, std::string input, double lump_sum,
                                 std::vector<double> cutoffs, std::vector<double> rates) {
  tax::TaxRule r;
  r.id = std::move(id);
  r.kind = tax::RuleKind::Benefit;
  r.input = std::move(input);
  r.params[{}] = tax::RuleParams{tax::Support(std::move(cutoffs)), std::move(rates), lump_sum};
  return r;
}

/// Five brackets at 10..50% on 25k intervals.
inline tax::TaxCode example1_code() {
  return tax::TaxCode("example1", {},
                      {bracket_rule("income_tax", "income_before_tax",
                                    {25000, 50000, 75000, 100000}, {0.1, 0.2, 0.3, 0.4, 0.5})});
}

/// Example 1 plus a healthcare phase-out on household income and a flat
/// child benefit of 800 per child.
inline tax::TaxCode example2_code() {
  std::vector<double> child_cutoffs;
  for (int c = 1; c <= 100; ++c) child_cutoffs.push_back(c);
  return tax::TaxCode(
      "example2", {},
      {bracket_rule("income_tax", "income_before_tax", {25000, 50000, 75000, 100000},
                    {0.1, 0.2, 0.3, 0.4, 0.5}),
       benefit_rule("healthcare", "household_income", -1500, {30000, 40000}, {0.0, 0.15, 0.0}),
       bracket_rule("child_benefit", "children", child_cutoffs,
                    std::vector<double>(101, -800.0))});
}

/// Two group dimensions: employment (labor, self_employed) and fiscal
/// partnership. Partners share a household healthcare benefit of 2 250
/// (1 125 each) phased out on household income from 30k to 60k; singles get
/// 1 500 phased out from 30k to 40k. The self-employed pay no income tax on
/// their first 15 000.
inline tax::TaxCode example3_code() {
  std::vector<tax::GroupDimension> dims{
      {"employment", "employment", {{"labor", "labor"}, {"self_employed", "self_employed"}}},
      {"partner", "fiscal_partner", {{"yes", "fiscal_partner"}, {"no", "single"}}}};
  tax::TaxRule health;
  health.id = "healthcare";
  health.kind = tax::RuleKind::Benefit;
  health.input = "household_income";
  health.group_by = {"partner"};
  health.topic = "healthcare";
  health.params[{"fiscal_partner"}] =
      tax::RuleParams{tax::Support({30000, 60000}), {0.0, 0.0375, 0.0}, -1125};
  health.params[{"single"}] = tax::RuleParams{tax::Support({30000, 40000}), {0.0, 0.15, 0.0}, -1500};
  tax::TaxRule credit;
  credit.id = "self_employed_credit";
  credit.kind = tax::RuleKind::TaxCreditingDeductible;
  credit.input = "income_before_tax";
  credit.credited_rule = "income_tax";
  credit.eligibility["employment"] = {"self_employed"};
  credit.topic = "self_employed";
  credit.params[{}] = tax::RuleParams{tax::Support(), {}, 0.0, 15000};
  std::vector<double> child_cutoffs;
  for (int c = 1; c <= 100; ++c) child_cutoffs.push_back(c);
  auto income_tax = bracket_rule("income_tax", "income_before_tax", {25000, 50000, 75000, 100000},
                                 {0.1, 0.2, 0.3, 0.4, 0.5});
  income_tax.topic = "income_brackets";
  auto children = bracket_rule("child_benefit", "children", child_cutoffs,
                               std::vector<double>(101, -800.0));
  children.topic = "children";
  return tax::TaxCode("example3", dims, {income_tax, health, children, credit});
}

inline tax::InputVector example2_inputs(double income, double children) {
  return {{"income_before_tax", income}, {"household_income", income}, {"children", children}};
}

}  // namespace fiscalopt::testing
