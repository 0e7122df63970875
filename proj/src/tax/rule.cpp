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

#include "fiscalopt/tax/rule.hpp"

#include <algorithm>
#include <cmath>

#include "fiscalopt/error.hpp"

namespace fiscalopt::tax {

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Bracket: return "bracket";
    case RuleKind::Benefit: return "benefit";
    case RuleKind::InputReducingDeductible: return "input_reducing_deductible";
    case RuleKind::TaxCreditingDeductible: return "tax_crediting_deductible";
  }
  return "?";
}

RuleKind rule_kind_from_string(std::string_view text) {
  if (text == "bracket") return RuleKind::Bracket;
  if (text == "benefit") return RuleKind::Benefit;
  if (text == "input_reducing_deductible") return RuleKind::InputReducingDeductible;
  if (text == "tax_crediting_deductible") return RuleKind::TaxCreditingDeductible;
  throw ValidationError("unknown rule kind '" + std::string(text) + "'");
}

double PiecewiseLinear::value(double x) const {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("rule input must be finite and non-negative, got " +
                      std::to_string(x));
  }
  double total = intercept;
  const auto cutoffs = support.cutoffs();
  double lower = 0.0;
  for (std::size_t b = 0; b < cutoffs.size() && x > lower; ++b) {
    total += slopes[b] * (std::min(x, cutoffs[b]) - lower);
    lower = cutoffs[b];
  }
  if (x > lower) total += slopes.back() * (x - lower);
  return total;
}

double PiecewiseLinear::slope_at(double x) const {
  return slopes[support.active_bracket(x)];
}

const RuleParams& TaxRule::params_for(const GroupCell& cell) const {
  auto it = params.find(cell);
  if (it == params.end()) {
    std::string labels;
    for (const auto& l : cell) labels += (labels.empty() ? "" : ",") + l;
    throw NotFoundError("rule '" + id + "' has no parameters for group (" + labels + ")");
  }
  return it->second;
}

PiecewiseLinear TaxRule::shape(const GroupCell& cell) const {
  const RuleParams& p = params_for(cell);
  switch (kind) {
    case RuleKind::Bracket:
    case RuleKind::Benefit:
      return {p.support, p.rates, p.lump_sum};
    case RuleKind::InputReducingDeductible: {
      if (p.deduction == 0.0) return {p.support, p.rates, 0.0};
      std::vector<double> cutoffs{p.deduction};
      for (double c : p.support.cutoffs()) cutoffs.push_back(c + p.deduction);
      std::vector<double> slopes{0.0};
      slopes.insert(slopes.end(), p.rates.begin(), p.rates.end());
      return {Support(std::move(cutoffs)), std::move(slopes), 0.0};
    }
    case RuleKind::TaxCreditingDeductible:
      break;
  }
  throw Error("rule '" + id + "': tax-crediting deductibles must be compiled "
              "against their credited rule before evaluation");
}

std::vector<std::string> check_rule(const TaxRule& rule) {
  std::vector<std::string> issues;
  const std::string where = "rule '" + rule.id + "'";
  if (rule.id.empty()) issues.push_back("rule without id");
  if (rule.params.empty()) issues.push_back(where + " has no parameters");
  for (const auto& [cell, p] : rule.params) {
    if (cell.size() != rule.group_by.size()) {
      issues.push_back(where + " has a parameter cell with " + std::to_string(cell.size()) +
                       " labels but groups by " + std::to_string(rule.group_by.size()) +
                       " dimensions");
    }
    const bool crediting = rule.kind == RuleKind::TaxCreditingDeductible;
    if (!crediting && p.rates.size() != p.support.bracket_count()) {
      issues.push_back(where + ": " + std::to_string(p.rates.size()) + " rates for " +
                       std::to_string(p.support.bracket_count()) + " brackets");
    }
    for (double r : p.rates) {
      if (!std::isfinite(r)) issues.push_back(where + " has a non-finite rate");
    }
    if (!std::isfinite(p.lump_sum) || !std::isfinite(p.deduction)) {
      issues.push_back(where + " has a non-finite lump sum or deduction");
    }
    switch (rule.kind) {
      case RuleKind::Bracket:
        if (p.lump_sum != 0.0) issues.push_back(where + ": bracket rules carry no lump sum");
        if (p.deduction != 0.0) issues.push_back(where + ": bracket rules carry no deduction");
        break;
      case RuleKind::Benefit:
        if (p.deduction != 0.0) issues.push_back(where + ": benefits carry no deduction");
        if (rule.input.empty() &&
            (p.support.bracket_count() != 1 || p.rates.size() != 1 || p.rates[0] != 0.0)) {
          issues.push_back(where + ": a benefit without input can only be a lump sum");
        }
        break;
      case RuleKind::InputReducingDeductible:
        if (p.lump_sum != 0.0) issues.push_back(where + ": deductibles carry no lump sum");
        if (p.deduction < 0.0) issues.push_back(where + ": deduction must be non-negative");
        break;
      case RuleKind::TaxCreditingDeductible:
        if (p.lump_sum != 0.0) issues.push_back(where + ": deductibles carry no lump sum");
        if (!(p.deduction > 0.0)) issues.push_back(where + ": credited amount must be positive");
        if (!p.rates.empty()) issues.push_back(where + ": a credit takes its rates from the credited rule");
        break;
    }
  }
  if (rule.input.empty() && rule.kind != RuleKind::Benefit) {
    issues.push_back(where + " has no input");
  }
  if (rule.kind == RuleKind::TaxCreditingDeductible && rule.credited_rule.empty()) {
    issues.push_back(where + " does not name the rule it credits");
  }
  return issues;
}

TaxRule compile_credit(const TaxRule& credit, const TaxRule& credited) {
  // Position of each of the credited rule's dimensions inside the credit's cell.
  std::vector<std::size_t> positions;
  for (const auto& dim : credited.group_by) {
    auto it = std::find(credit.group_by.begin(), credit.group_by.end(), dim);
    if (it == credit.group_by.end()) {
      throw ValidationError("credit '" + credit.id + "' must group by dimension '" + dim +
                            "' of credited rule '" + credited.id + "'");
    }
    positions.push_back(static_cast<std::size_t>(it - credit.group_by.begin()));
  }

  TaxRule out;
  out.id = credit.id;
  out.kind = RuleKind::Bracket;
  out.input = credited.input;
  out.group_by = credit.group_by;
  out.eligibility = credit.eligibility;
  for (const auto& [dim, labels] : credited.eligibility) {
    auto& mine = out.eligibility[dim];
    if (mine.empty()) {
      mine = labels;
    } else {
      std::set<std::string> both;
      std::set_intersection(mine.begin(), mine.end(), labels.begin(), labels.end(),
                            std::inserter(both, both.begin()));
      mine = std::move(both);
    }
  }
  out.credited_rule = credited.id;
  out.topic = credit.topic;
  out.frozen = credit.frozen;
  out.income_dependent = credit.income_dependent;

  for (const auto& [cell, p] : credit.params) {
    GroupCell credited_cell;
    for (std::size_t pos : positions) credited_cell.push_back(cell[pos]);
    const PiecewiseLinear base = credited.shape(credited_cell);
    std::vector<double> cutoffs;
    std::vector<double> slopes;
    const auto base_cutoffs = base.support.cutoffs();
    std::size_t b = 0;
    for (; b < base_cutoffs.size() && base_cutoffs[b] < p.deduction; ++b) {
      cutoffs.push_back(base_cutoffs[b]);
      slopes.push_back(-base.slopes[b]);
    }
    cutoffs.push_back(p.deduction);
    slopes.push_back(-base.slopes[b]);
    slopes.push_back(0.0);
    out.params[cell] = RuleParams{Support(std::move(cutoffs)), std::move(slopes), 0.0, 0.0};
  }
  return out;
}

}  // namespace fiscalopt::tax
