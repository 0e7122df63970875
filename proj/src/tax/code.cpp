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

#include "fiscalopt/tax/code.hpp"

#include <algorithm>
#include <set>

#include "fiscalopt/error.hpp"

namespace fiscalopt::tax {

namespace {

double input_value(const TaxRule& rule, const InputVector& inputs) {
  if (rule.input.empty()) return 0.0;
  auto it = inputs.find(rule.input);
  if (it == inputs.end()) {
    throw ValidationError("missing input '" + rule.input + "' required by rule '" + rule.id + "'");
  }
  return it->second;
}

}  // namespace

TaxCode::TaxCode(std::string name, std::vector<GroupDimension> dimensions,
                 std::vector<TaxRule> rules, CodeOptions options)
    : name_(std::move(name)),
      dimensions_(std::move(dimensions)),
      options_(std::move(options)) {
  std::vector<std::string> issues;
  std::set<std::string> dim_names;
  for (const auto& d : dimensions_) {
    if (!dim_names.insert(d.name).second) issues.push_back("duplicate dimension '" + d.name + "'");
    if (d.values.empty()) issues.push_back("dimension '" + d.name + "' maps no values");
  }
  std::set<std::string> ids;
  for (const auto& r : rules) {
    if (!ids.insert(r.id).second) issues.push_back("duplicate rule id '" + r.id + "'");
    auto rule_issues = check_rule(r);
    issues.insert(issues.end(), rule_issues.begin(), rule_issues.end());
    for (const auto& dim : r.group_by) {
      if (!dim_names.count(dim)) {
        issues.push_back("rule '" + r.id + "' groups by unknown dimension '" + dim + "'");
      }
    }
    for (const auto& [dim, labels] : r.eligibility) {
      if (!dim_names.count(dim)) {
        issues.push_back("rule '" + r.id + "' restricts unknown dimension '" + dim + "'");
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  // Every eligible cell needs parameters.
  dimensions_.shrink_to_fit();
  for (const auto& r : rules) {
    for (const auto& cell : cells(r.group_by)) {
      if (r.params.count(cell)) continue;
      // Ineligible cells may be left out.
      bool any_eligible = false;
      for (const auto& key : cells(dimension_names())) {
        if (project(key, r.group_by) != cell) continue;
        bool ok = true;
        for (const auto& [dim, labels] : r.eligibility) {
          if (!labels.count(key[dimension_index(dim)])) ok = false;
        }
        any_eligible = any_eligible || ok;
      }
      if (any_eligible) {
        issues.push_back("rule '" + r.id + "' has no parameters for group " +
                         cell_name(r.group_by, cell));
      }
    }
  }

  rules_.reserve(rules.size());
  for (const auto& r : rules) {
    if (r.kind != RuleKind::TaxCreditingDeductible) {
      rules_.push_back(r);
      continue;
    }
    auto credited = std::find_if(rules.begin(), rules.end(),
                                 [&](const TaxRule& c) { return c.id == r.credited_rule; });
    if (credited == rules.end()) {
      issues.push_back("credit '" + r.id + "' refers to unknown rule '" + r.credited_rule + "'");
      continue;
    }
    if (credited->kind == RuleKind::TaxCreditingDeductible) {
      issues.push_back("credit '" + r.id + "' cannot credit another credit");
      continue;
    }
    try {
      rules_.push_back(compile_credit(r, *credited));
    } catch (const Error& e) {
      issues.push_back(e.what());
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

const TaxRule& TaxCode::rule(std::string_view id) const {
  for (const auto& r : rules_) {
    if (r.id == id) return r;
  }
  throw NotFoundError("unknown rule '" + std::string(id) + "'");
}

bool TaxCode::has_rule(std::string_view id) const {
  return std::any_of(rules_.begin(), rules_.end(), [&](const TaxRule& r) { return r.id == id; });
}

std::size_t TaxCode::dimension_index(std::string_view name) const {
  for (std::size_t i = 0; i < dimensions_.size(); ++i) {
    if (dimensions_[i].name == name) return i;
  }
  throw NotFoundError("unknown group dimension '" + std::string(name) + "'");
}

std::vector<std::string> TaxCode::dimension_names() const {
  std::vector<std::string> out;
  for (const auto& d : dimensions_) out.push_back(d.name);
  return out;
}

GroupCell TaxCode::project(const GroupKey& key, std::span<const std::string> names) const {
  GroupCell cell;
  cell.reserve(names.size());
  for (const auto& n : names) cell.push_back(key.at(dimension_index(n)));
  return cell;
}

bool TaxCode::eligible(const TaxRule& rule, const GroupKey& key) const {
  for (const auto& [dim, labels] : rule.eligibility) {
    if (!labels.count(key.at(dimension_index(dim)))) return false;
  }
  return true;
}

bool TaxCode::income_dependent(const TaxRule& rule) const {
  if (rule.income_dependent) return *rule.income_dependent;
  const auto& inc = options_.income_inputs;
  return std::find(inc.begin(), inc.end(), rule.input) != inc.end();
}

std::vector<std::string> TaxCode::comoving_inputs(std::string_view input) const {
  std::vector<std::string> out{std::string(input)};
  for (const auto& [household, personal] : options_.household_sums) {
    if (personal == input) out.push_back(household);
  }
  return out;
}

std::vector<std::string> TaxCode::inputs() const {
  std::set<std::string> all;
  for (const auto& r : rules_) {
    if (!r.input.empty()) all.insert(r.input);
  }
  return {all.begin(), all.end()};
}

std::vector<GroupCell> TaxCode::cells(std::span<const std::string> names) const {
  std::vector<GroupCell> out{GroupCell{}};
  for (const auto& n : names) {
    const auto labels = dimensions_.at(dimension_index(n)).labels();
    std::vector<GroupCell> next;
    next.reserve(out.size() * labels.size());
    for (const auto& prefix : out) {
      for (const auto& l : labels) {
        auto c = prefix;
        c.push_back(l);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

double evaluate_rule(const TaxCode& code, const TaxRule& rule, const InputVector& inputs,
                     const GroupKey& group) {
  if (!code.eligible(rule, group)) return 0.0;
  const double x = input_value(rule, inputs);
  return rule.shape(code.project(group, rule.group_by)).value(x);
}

double evaluate_code(const TaxCode& code, const InputVector& inputs, const GroupKey& group) {
  double total = 0.0;
  for (const auto& r : code.rules()) total += evaluate_rule(code, r, inputs, group);
  return total;
}

double evaluate_code(const TaxCode& code, const TaxpayerProfile& taxpayer) {
  return evaluate_code(code, taxpayer.inputs, code.assign(taxpayer.characteristics));
}

double rule_marginal(const TaxCode& code, const TaxRule& rule, const InputVector& inputs,
                     const GroupKey& group, std::string_view wrt) {
  if (rule.input.empty() || !code.eligible(rule, group)) return 0.0;
  const auto moving = code.comoving_inputs(wrt);
  if (std::find(moving.begin(), moving.end(), rule.input) == moving.end()) return 0.0;
  const double x = input_value(rule, inputs);
  return rule.shape(code.project(group, rule.group_by)).slope_at(x);
}

double marginal_pressure(const TaxCode& code, const InputVector& inputs, const GroupKey& group,
                         std::string_view wrt) {
  double total = 0.0;
  for (const auto& r : code.rules()) total += rule_marginal(code, r, inputs, group, wrt);
  return total;
}

double marginal_pressure(const TaxCode& code, const TaxpayerProfile& taxpayer,
                         std::string_view wrt) {
  return marginal_pressure(code, taxpayer.inputs, code.assign(taxpayer.characteristics), wrt);
}

Support rule_support(const TaxCode& code, const TaxRule& rule, const GroupKey& group) {
  return rule.shape(code.project(group, rule.group_by)).support;
}

Support merge_supports(const TaxCode& code, std::span<const TaxRule* const> rules,
                       const GroupKey& group, std::string_view input) {
  std::vector<Support> parts;
  for (const TaxRule* r : rules) {
    if (r->input != input || !code.eligible(*r, group)) continue;
    parts.push_back(rule_support(code, *r, group));
  }
  return Support::merge(parts);
}

}  // namespace fiscalopt::tax
