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

#include "fiscalopt/model/layout.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fiscalopt/error.hpp"

namespace fiscalopt::model {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

/// Dimensions a rule's parameters or eligibility depend on, minus merges,
/// in code order.
std::vector<std::string> rule_dims(const tax::TaxCode& code, const tax::TaxRule& rule,
                                   const std::vector<std::string>& merged,
                                   std::set<std::string>& into) {
  for (const auto& d : rule.group_by) {
    if (!contains(merged, d)) into.insert(d);
  }
  for (const auto& [d, labels] : rule.eligibility) {
    if (!contains(merged, d)) into.insert(d);
  }
  std::vector<std::string> out;
  for (const auto& d : code.dimension_names()) {
    if (into.count(d)) out.push_back(d);
  }
  return out;
}

bool group_matches(const std::map<std::string, std::string>& filter,
                   const std::vector<std::string>& dims, const tax::GroupCell& cell) {
  for (const auto& [dim, label] : filter) {
    auto it = std::find(dims.begin(), dims.end(), dim);
    if (it != dims.end() && cell[static_cast<std::size_t>(it - dims.begin())] != label) {
      return false;
    }
  }
  return true;
}

}  // namespace

Layout::Layout(const tax::TaxCode& code, const ReformSpec& spec,
               const io::Population& population)
    : code_(std::make_shared<const tax::TaxCode>(code)), spec_(spec) {
  const auto dim_names = code.dimension_names();
  std::vector<std::string> issues;
  for (const auto& [id, setting] : spec.rules) {
    if (!code.has_rule(id)) issues.push_back("unknown rule '" + id + "'");
    if (setting.mode == RuleMode::Scale && !(setting.scale_lower <= setting.scale_upper)) {
      issues.push_back("rule '" + id + "': scale bounds out of order");
    }
  }
  for (const auto& d : dim_names) {
    if (contains(spec.merged_dimensions, d)) merged_.push_back(d);
  }
  for (const auto& d : spec.merged_dimensions) {
    if (!contains(dim_names, d)) issues.push_back("unknown group dimension '" + d + "'");
  }
  const auto inputs = code.inputs();
  for (const auto& in : spec.tied_inputs) {
    if (!contains(inputs, in)) issues.push_back("tied input '" + in + "' is not used by any rule");
  }
  for (const auto& o : spec.support_overrides) {
    if (!contains(inputs, o.input)) {
      issues.push_back("support override for unused input '" + o.input + "'");
    }
    for (const auto& [dim, label] : o.group) {
      if (!contains(dim_names, dim)) issues.push_back("support override on unknown dimension '" + dim + "'");
    }
  }
  if (!(spec.rate_lower <= spec.rate_upper) || !(spec.lump_lower <= spec.lump_upper)) {
    issues.push_back("default variable bounds out of order");
  }
  if (!issues.empty()) throw CompileError(ValidationError(issues).what());

  // Frozen parameters, checked against the rule's shape.
  for (const auto& r : code.rules()) {
    const RuleMode m = mode(r);
    if (m != RuleMode::Frozen) continue;
    tax::TaxRule copy = r;
    copy.frozen = true;
    auto it = spec.rules.find(r.id);
    if (it != spec.rules.end() && it->second.params) {
      copy.params = *it->second.params;
      auto rule_issues = tax::check_rule(copy);
      for (const auto& cell : code.cells(copy.group_by)) {
        if (r.params.count(cell) && !copy.params.count(cell)) {
          rule_issues.push_back("frozen rule '" + r.id + "' lacks parameters for group " +
                                tax::cell_name(copy.group_by, cell));
        }
      }
      if (!rule_issues.empty()) throw CompileError(ValidationError(rule_issues).what());
    }
    frozen_.emplace(r.id, std::move(copy));
  }

  std::set<tax::GroupKey> keys;
  for (const auto& t : population.taxpayers()) {
    try {
      keys.insert(code.assign(t.characteristics));
    } catch (const ValidationError& e) {
      throw ValidationError("taxpayer '" + t.id + "': " + e.what());
    }
  }

  // Rate blocks per (input, cell).
  struct PendingBlock {
    std::string cell_name;
    std::string input;
    tax::GroupCell cell;
    std::vector<tax::Support> parts;
    tax::GroupKey representative;
  };
  std::map<std::pair<std::string, std::string>, PendingBlock> pending;
  std::map<std::string, std::string> input_topic;
  std::map<std::string, bool> input_income;
  for (const auto& input : inputs) {
    std::vector<const tax::TaxRule*> rate_rules;
    std::set<std::string> dims;
    std::vector<std::string> ordered;
    std::set<std::string> topics;
    bool income = false;
    for (const auto& r : code.rules()) {
      if (r.input != input || mode(r) != RuleMode::Rate) continue;
      rate_rules.push_back(&r);
      ordered = rule_dims(code, r, merged_, dims);
      if (!r.topic.empty()) topics.insert(r.topic);
      income = income || code.income_dependent(r);
    }
    if (rate_rules.empty()) continue;
    input_dims_[input] = ordered;
    std::string topic;
    for (const auto& t : topics) topic += (topic.empty() ? "" : "+") + t;
    input_topic[input] = topic;
    input_income[input] = income;
    for (const auto& key : keys) {
      bool any = false;
      std::vector<tax::Support> parts;
      for (const tax::TaxRule* r : rate_rules) {
        if (!effectively_eligible(*r, key)) continue;
        any = true;
        if (code.eligible(*r, key)) parts.push_back(tax::rule_support(code, *r, key));
      }
      if (!any) continue;
      const tax::GroupCell cell = code.project(key, ordered);
      const std::string name = tax::cell_name(ordered, cell);
      auto [it, fresh] = pending.try_emplace({name, input});
      if (fresh) {
        it->second = PendingBlock{name, input, cell, {}, key};
      }
      for (auto& p : parts) it->second.parts.push_back(std::move(p));
    }
  }

  for (auto& [sort_key, p] : pending) {
    RateBlock block;
    block.input = p.input;
    block.dims = input_dims_[p.input];
    block.cell = p.cell;
    block.tied = is_tied(p.input);
    block.support = tax::Support::merge(p.parts);
    for (const auto& o : spec.support_overrides) {
      if (o.input == p.input && group_matches(o.group, block.dims, block.cell)) {
        block.support = o.support;
      }
    }
    if (block.tied) block.support = tax::Support();
    const int brackets = static_cast<int>(block.support.bracket_count());
    for (int b = 0; b < brackets; ++b) {
      Variable v;
      v.kind = VariableKind::Rate;
      v.dims = block.dims;
      v.cell = block.cell;
      v.input = p.input;
      v.bracket_first = b;
      v.bracket_last = b;
      v.lower = spec.rate_lower;
      v.upper = spec.rate_upper;
      v.income_dependent = input_income[p.input];
      v.topic = input_topic[p.input];
      v.name = "rate[" + p.cell_name + "|" + p.input + "|" +
               (block.tied ? std::string("*") : std::to_string(b)) + "]";
      block.variables.push_back(static_cast<int>(variables_.size()));
      variables_.push_back(std::move(v));
      representative_.push_back(p.representative);
    }
    block_index_[{p.input, p.cell}] = static_cast<int>(rate_blocks_.size());
    rate_blocks_.push_back(std::move(block));
  }

  // Lump sums of rate-mode benefits.
  for (const auto& r : code.rules()) {
    if (r.kind != tax::RuleKind::Benefit || mode(r) != RuleMode::Rate) continue;
    std::set<std::string> dims;
    const auto ordered = rule_dims(code, r, merged_, dims);
    lump_dims_[r.id] = ordered;
    std::map<tax::GroupCell, tax::GroupKey> cells;
    for (const auto& key : keys) {
      if (effectively_eligible(r, key)) cells.emplace(code.project(key, ordered), key);
    }
    for (const auto& [cell, key] : cells) {
      Variable v;
      v.kind = VariableKind::Lump;
      v.dims = ordered;
      v.cell = cell;
      v.input = r.input;
      v.rule = r.id;
      v.lower = spec.lump_lower;
      v.upper = spec.lump_upper;
      v.topic = r.topic;
      v.name = "lump[" + r.id + "|" + tax::cell_name(ordered, cell) + "]";
      lump_index_[{r.id, cell}] = static_cast<int>(variables_.size());
      variables_.push_back(std::move(v));
      representative_.push_back(key);
    }
  }

  for (const auto& r : code.rules()) {
    if (mode(r) != RuleMode::Scale) continue;
    const RuleSetting& setting = spec.rules.at(r.id);
    Variable v;
    v.kind = VariableKind::Scale;
    v.input = r.input;
    v.rule = r.id;
    v.lower = setting.scale_lower;
    v.upper = setting.scale_upper;
    v.income_dependent = code.income_dependent(r);
    v.topic = r.topic;
    v.name = "scale[" + r.id + "]";
    scale_index_[r.id] = static_cast<int>(variables_.size());
    variables_.push_back(std::move(v));
    representative_.emplace_back();
  }

  for (const auto& bound : spec.variable_bounds) {
    for (int j : select(bound.variables)) {
      if (bound.lower) variables_[j].lower = *bound.lower;
      if (bound.upper) variables_[j].upper = *bound.upper;
      if (!(variables_[j].lower <= variables_[j].upper)) {
        throw CompileError("variable '" + variables_[j].name + "' has bounds out of order");
      }
    }
  }
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    by_name_[variables_[j].name] = static_cast<int>(j);
  }
}

int Layout::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

RuleMode Layout::mode(const tax::TaxRule& rule) const {
  auto it = spec_.rules.find(rule.id);
  RuleMode m = it == spec_.rules.end() ? RuleMode::Rate : it->second.mode;
  if (rule.frozen) m = RuleMode::Frozen;
  // Deduction amounts are never optimized; the rule keeps its parameters.
  if (m == RuleMode::Rate && rule.kind == tax::RuleKind::InputReducingDeductible) {
    m = RuleMode::Frozen;
  }
  return m;
}

const tax::TaxRule& Layout::frozen_rule(const std::string& id) const {
  auto it = frozen_.find(id);
  if (it == frozen_.end()) throw NotFoundError("rule '" + id + "' is not frozen");
  return it->second;
}

const std::vector<std::string>& Layout::input_dims(const std::string& input) const {
  auto it = input_dims_.find(input);
  if (it == input_dims_.end()) throw NotFoundError("input '" + input + "' has no rate variables");
  return it->second;
}

bool Layout::effectively_eligible(const tax::TaxRule& rule, const tax::GroupKey& key) const {
  for (const auto& [dim, labels] : rule.eligibility) {
    if (contains(merged_, dim)) continue;
    if (!labels.count(key.at(code_->dimension_index(dim)))) return false;
  }
  return true;
}

bool Layout::is_tied(const std::string& input) const {
  return contains(spec_.tied_inputs, input);
}

const RateBlock* Layout::block(const std::string& input, const tax::GroupKey& key) const {
  auto dims = input_dims_.find(input);
  if (dims == input_dims_.end()) return nullptr;
  auto it = block_index_.find({input, code_->project(key, dims->second)});
  return it == block_index_.end() ? nullptr : &rate_blocks_[static_cast<std::size_t>(it->second)];
}

int Layout::lump(const std::string& rule, const tax::GroupKey& key) const {
  auto dims = lump_dims_.find(rule);
  if (dims == lump_dims_.end()) return -1;
  auto it = lump_index_.find({rule, code_->project(key, dims->second)});
  return it == lump_index_.end() ? -1 : it->second;
}

int Layout::scale(const std::string& rule) const {
  auto it = scale_index_.find(rule);
  return it == scale_index_.end() ? -1 : it->second;
}

std::vector<int> Layout::select(const VariableSelector& s) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const Variable& v = variables_[j];
    switch (s.kind) {
      case VariableSelector::Kind::Any: break;
      case VariableSelector::Kind::Rate: if (v.kind != VariableKind::Rate) continue; break;
      case VariableSelector::Kind::Lump: if (v.kind != VariableKind::Lump) continue; break;
      case VariableSelector::Kind::Scale: if (v.kind != VariableKind::Scale) continue; break;
    }
    if (!s.input.empty() && v.input != s.input) continue;
    if (!s.rule.empty()) {
      if (v.kind == VariableKind::Rate) {
        if (!code_->has_rule(s.rule) || code_->rule(s.rule).input != v.input) continue;
      } else if (v.rule != s.rule) {
        continue;
      }
    }
    if (!group_matches(s.group, v.dims, v.cell)) continue;
    if (v.kind == VariableKind::Rate) {
      if (s.bracket_min && v.bracket_last < *s.bracket_min) continue;
      if (s.bracket_max && v.bracket_first > *s.bracket_max) continue;
    } else if (s.bracket_min || s.bracket_max) {
      continue;
    }
    out.push_back(static_cast<int>(j));
  }
  return out;
}

std::vector<double> Layout::current_values() const {
  std::vector<double> out(variables_.size(), 0.0);
  for (const auto& block : rate_blocks_) {
    const tax::GroupKey& key = representative_[static_cast<std::size_t>(block.variables[0])];
    for (std::size_t b = 0; b < block.variables.size(); ++b) {
      const double lo = block.support.lower(b);
      const double hi = block.support.upper(b);
      const double probe = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0;
      double rate = 0.0;
      for (const auto& r : code_->rules()) {
        if (r.input != block.input || mode(r) != RuleMode::Rate || !code_->eligible(r, key)) {
          continue;
        }
        rate += r.shape(code_->project(key, r.group_by)).slope_at(block.tied ? 0.5 : probe);
      }
      out[static_cast<std::size_t>(block.variables[b])] = rate;
    }
  }
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const Variable& v = variables_[j];
    if (v.kind == VariableKind::Scale) out[j] = 1.0;
    if (v.kind == VariableKind::Lump) {
      const tax::TaxRule& r = code_->rule(v.rule);
      const auto& key = representative_[j];
      if (code_->eligible(r, key)) out[j] = r.params_for(code_->project(key, r.group_by)).lump_sum;
    }
  }
  return out;
}

tax::TaxCode Layout::materialize(const std::vector<double>& values) const {
  if (values.size() != variables_.size()) {
    throw DomainError("expected " + std::to_string(variables_.size()) + " values, got " +
                      std::to_string(values.size()));
  }
  std::vector<tax::TaxRule> rules;
  for (const auto& r : code_->rules()) {
    switch (mode(r)) {
      case RuleMode::Frozen:
        rules.push_back(frozen_.at(r.id));
        break;
      case RuleMode::Scale: {
        tax::TaxRule copy = r;
        const double s = values[static_cast<std::size_t>(scale_index_.at(r.id))];
        for (auto& [cell, p] : copy.params) {
          for (double& rate : p.rates) rate *= s;
          p.lump_sum *= s;
        }
        rules.push_back(std::move(copy));
        break;
      }
      case RuleMode::Rate:
        break;
    }
  }
  for (const auto& [input, dims] : input_dims_) {
    tax::TaxRule r;
    r.id = "rates:" + input;
    r.kind = tax::RuleKind::Bracket;
    r.input = input;
    r.group_by = dims;
    for (const auto& cell : code_->cells(dims)) {
      auto it = block_index_.find({input, cell});
      if (it == block_index_.end()) {
        r.params[cell] = tax::RuleParams{tax::Support(), {0.0}};
        continue;
      }
      const RateBlock& block = rate_blocks_[static_cast<std::size_t>(it->second)];
      std::vector<double> rates;
      for (int j : block.variables) rates.push_back(values[static_cast<std::size_t>(j)]);
      r.params[cell] = tax::RuleParams{block.support, std::move(rates)};
    }
    for (const auto& v : variables_) {
      if (v.kind == VariableKind::Rate && v.input == input) {
        r.topic = v.topic;
        r.income_dependent = v.income_dependent;
        break;
      }
    }
    rules.push_back(std::move(r));
  }
  for (const auto& [rule_id, dims] : lump_dims_) {
    tax::TaxRule r;
    r.id = "lump:" + rule_id;
    r.kind = tax::RuleKind::Benefit;
    r.group_by = dims;
    r.topic = code_->rule(rule_id).topic;
    r.income_dependent = false;
    for (const auto& cell : code_->cells(dims)) {
      auto it = lump_index_.find({rule_id, cell});
      const double z = it == lump_index_.end() ? 0.0 : values[static_cast<std::size_t>(it->second)];
      r.params[cell] = tax::RuleParams{tax::Support(), {0.0}, z};
    }
    rules.push_back(std::move(r));
  }
  return tax::TaxCode(code_->name() + ":reform", code_->dimensions(), std::move(rules),
                      code_->options());
}

double CoefficientRow::evaluate(const std::vector<double>& values) const {
  double total = constant;
  for (const auto& e : entries) total += e.value * values[static_cast<std::size_t>(e.column)];
  return total;
}

namespace {

void normalize(std::vector<lp::Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const lp::Entry& a, const lp::Entry& b) { return a.column < b.column; });
  std::vector<lp::Entry> out;
  for (const auto& e : entries) {
    if (!out.empty() && out.back().column == e.column) out.back().value += e.value;
    else out.push_back(e);
  }
  std::erase_if(out, [](const lp::Entry& e) { return e.value == 0.0; });
  entries = std::move(out);
}

double required_input(const io::Taxpayer& t, const std::string& input) {
  auto it = t.inputs.find(input);
  if (it == t.inputs.end()) {
    throw ValidationError("taxpayer '" + t.id + "': missing input '" + input + "'");
  }
  return it->second;
}

}  // namespace

std::vector<CoefficientRow> build_rows(const Layout& layout, const io::Population& population) {
  const tax::TaxCode& code = layout.code();
  std::vector<CoefficientRow> rows;
  rows.reserve(population.size());
  std::vector<double> parts;
  std::vector<std::string> rate_inputs;
  for (const auto& input : code.inputs()) {
    for (const auto& b : layout.rate_blocks()) {
      if (b.input == input) {
        rate_inputs.push_back(input);
        break;
      }
    }
  }
  for (const auto& t : population.taxpayers()) {
    CoefficientRow row;
    row.id = t.id;
    row.weight = t.weight;
    const tax::GroupKey key = code.assign(t.characteristics);
    try {
      for (const auto& r : code.rules()) {
        switch (layout.mode(r)) {
          case RuleMode::Frozen:
            row.constant += tax::evaluate_rule(code, layout.frozen_rule(r.id), t.inputs, key);
            break;
          case RuleMode::Scale: {
            const double v = tax::evaluate_rule(code, r, t.inputs, key);
            if (v != 0.0) row.entries.push_back({layout.scale(r.id), v});
            break;
          }
          case RuleMode::Rate:
            if (r.kind == tax::RuleKind::Benefit) {
              const int j = layout.lump(r.id, key);
              if (j >= 0) row.entries.push_back({j, 1.0});
            }
            break;
        }
      }
    } catch (const ValidationError& e) {
      throw ValidationError("taxpayer '" + t.id + "': " + e.what());
    }
    for (const auto& input : rate_inputs) {
      const RateBlock* block = layout.block(input, key);
      if (!block) continue;
      const double x = required_input(t, input);
      parts.resize(block->support.bracket_count());
      tax::bracketize_into(x, block->support, parts);
      for (std::size_t b = 0; b < parts.size(); ++b) {
        if (parts[b] != 0.0) row.entries.push_back({block->variables[b], parts[b]});
      }
    }
    normalize(row.entries);
    rows.push_back(std::move(row));
  }
  return rows;
}

CoefficientRow marginal_row(const Layout& layout, const io::Taxpayer& taxpayer,
                            const std::string& wrt) {
  const tax::TaxCode& code = layout.code();
  const tax::GroupKey key = code.assign(taxpayer.characteristics);
  CoefficientRow row;
  row.id = taxpayer.id;
  row.weight = taxpayer.weight;
  for (const auto& r : code.rules()) {
    switch (layout.mode(r)) {
      case RuleMode::Frozen:
        row.constant += tax::rule_marginal(code, layout.frozen_rule(r.id), taxpayer.inputs, key, wrt);
        break;
      case RuleMode::Scale: {
        const double m = tax::rule_marginal(code, r, taxpayer.inputs, key, wrt);
        if (m != 0.0) row.entries.push_back({layout.scale(r.id), m});
        break;
      }
      case RuleMode::Rate:
        break;
    }
  }
  for (const auto& input : code.comoving_inputs(wrt)) {
    const RateBlock* block = layout.block(input, key);
    if (!block) continue;
    const double x = required_input(taxpayer, input);
    row.entries.push_back({block->variables[block->support.active_bracket(x)], 1.0});
  }
  normalize(row.entries);
  return row;
}

}  // namespace fiscalopt::model
