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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fiscalopt/tax/groups.hpp"
#include "fiscalopt/tax/rule.hpp"
#include "fiscalopt/tax/support.hpp"

namespace fiscalopt::tax {

struct CodeOptions {
  /// Rules on these inputs count as income dependent.
  std::vector<std::string> income_inputs{"income_before_tax", "household_income"};
  /// Household input -> personal input it sums over the household's members.
  /// One more unit of the personal input raises the household input by one.
  std::map<std::string, std::string> household_sums{{"household_income", "income_before_tax"}};
};

/// What the tax code needs to know about a taxpayer.
struct TaxpayerProfile {
  InputVector inputs;
  Characteristics characteristics;
};

/// A complete, immutable tax code: group dimensions plus rules.
///
/// Construction validates every rule against the dimensions and compiles
/// tax-crediting deductibles into negative bracket rules.
class TaxCode {
 public:
  TaxCode() = default;
  TaxCode(std::string name, std::vector<GroupDimension> dimensions,
          std::vector<TaxRule> rules, CodeOptions options = {});

  const std::string& name() const { return name_; }
  const std::vector<GroupDimension>& dimensions() const { return dimensions_; }
  const std::vector<TaxRule>& rules() const { return rules_; }
  const CodeOptions& options() const { return options_; }

  const TaxRule& rule(std::string_view id) const;
  bool has_rule(std::string_view id) const;
  std::size_t dimension_index(std::string_view name) const;
  std::vector<std::string> dimension_names() const;

  GroupKey assign(const Characteristics& characteristics) const {
    return assign_group(characteristics, dimensions_);
  }

  /// Labels of `key` restricted to the named dimensions.
  GroupCell project(const GroupKey& key, std::span<const std::string> dimension_names) const;
  bool eligible(const TaxRule& rule, const GroupKey& key) const;
  bool income_dependent(const TaxRule& rule) const;

  /// Inputs that move one-for-one with `input`: the input itself and every
  /// household sum built from it.
  std::vector<std::string> comoving_inputs(std::string_view input) const;

  /// Every input referenced by a rule, sorted.
  std::vector<std::string> inputs() const;

  /// Cartesian product of the labels of the named dimensions.
  std::vector<GroupCell> cells(std::span<const std::string> dimension_names) const;

 private:
  std::string name_;
  std::vector<GroupDimension> dimensions_;
  std::vector<TaxRule> rules_;
  CodeOptions options_;
};

/// Absolute pressure of one rule; 0 when the group is ineligible.
double evaluate_rule(const TaxCode& code, const TaxRule& rule, const InputVector& inputs,
                     const GroupKey& group);

/// Total absolute pressure: the sum of all rule pressures.
double evaluate_code(const TaxCode& code, const InputVector& inputs, const GroupKey& group);
double evaluate_code(const TaxCode& code, const TaxpayerProfile& taxpayer);

/// Marginal pressure of one rule with respect to `wrt`, including co-moving
/// household inputs.
double rule_marginal(const TaxCode& code, const TaxRule& rule, const InputVector& inputs,
                     const GroupKey& group, std::string_view wrt);

/// Change in absolute pressure per unit increase of `wrt`. At a cutoff the
/// lower bracket's rate applies.
double marginal_pressure(const TaxCode& code, const InputVector& inputs, const GroupKey& group,
                         std::string_view wrt);
double marginal_pressure(const TaxCode& code, const TaxpayerProfile& taxpayer,
                         std::string_view wrt);

/// Cutoffs of `rule` for `group`, expressed on the rule's raw input.
Support rule_support(const TaxCode& code, const TaxRule& rule, const GroupKey& group);

/// Union of the cutoffs of every eligible rule on `input` for `group`: the
/// breakpoints of the group's total tax function in that input.
Support merge_supports(const TaxCode& code, std::span<const TaxRule* const> rules,
                       const GroupKey& group, std::string_view input);

}  // namespace fiscalopt::tax
