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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fiscalopt/tax/groups.hpp"
#include "fiscalopt/tax/support.hpp"

namespace fiscalopt::tax {

enum class RuleKind {
  Bracket,
  Benefit,
  InputReducingDeductible,
  TaxCreditingDeductible,
};

std::string_view to_string(RuleKind kind);
RuleKind rule_kind_from_string(std::string_view text);

/// Parameters of a rule for one tax group cell.
struct RuleParams {
  Support support;
  std::vector<double> rates;  // one per bracket of `support`
  double lump_sum = 0.0;      // Benefit: Z, negative for a transfer
  double deduction = 0.0;     // deductibles: D

  friend bool operator==(const RuleParams&, const RuleParams&) = default;
};

/// intercept + sum_b slopes[b] * bracketize(x, support)[b]
struct PiecewiseLinear {
  Support support;
  std::vector<double> slopes;
  double intercept = 0.0;

  double value(double x) const;
  /// Slope of the segment left of x (right of 0 when x == 0).
  double slope_at(double x) const;
};

/// A single-input tax rule with group-dependent parameters.
///
/// `params` is keyed by the labels of `group_by`, in that order. Taxpayers
/// whose group fails `eligibility` pay nothing under the rule.
struct TaxRule {
  std::string id;
  RuleKind kind = RuleKind::Bracket;
  std::string input;  // empty only for a pure lump-sum Benefit
  std::vector<std::string> group_by;
  std::map<std::string, std::set<std::string>> eligibility;
  std::map<GroupCell, RuleParams> params;
  std::string credited_rule;  // TaxCreditingDeductible only
  std::string topic;
  bool frozen = false;
  std::optional<bool> income_dependent;

  /// The rule as a function of its raw input for one cell. Input-reducing
  /// deductibles are expressed with shifted cutoffs. Not defined for
  /// tax-crediting deductibles, which only exist until the owning code
  /// compiles them.
  PiecewiseLinear shape(const GroupCell& cell) const;

  const RuleParams& params_for(const GroupCell& cell) const;
};

/// Checks the per-kind invariants that do not need the owning code.
/// Returns the list of problems (empty when valid).
std::vector<std::string> check_rule(const TaxRule& rule);

/// Rewrites a tax-crediting deductible as a Bracket rule that cancels the
/// credited rule's pressure on [0, D]: a set of negative brackets.
TaxRule compile_credit(const TaxRule& credit, const TaxRule& credited);

}  // namespace fiscalopt::tax
