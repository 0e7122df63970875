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
#include <memory>
#include <string>
#include <vector>

#include "fiscalopt/io/population.hpp"
#include "fiscalopt/lp/problem.hpp"
#include "fiscalopt/model/reform_spec.hpp"
#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::model {

enum class VariableKind { Rate, Lump, Scale };

struct Variable {
  VariableKind kind = VariableKind::Rate;
  std::string name;
  std::vector<std::string> dims;  // dimensions of `cell`
  tax::GroupCell cell;
  std::string input;              // Rate
  int bracket_first = 0;          // Rate; a tied block spans every bracket
  int bracket_last = 0;
  std::string rule;               // Lump, Scale
  double lower = 0.0;
  double upper = 1.0;
  bool income_dependent = false;
  std::string topic;
};

/// The rates of one input for one group cell, on one support.
struct RateBlock {
  std::string input;
  std::vector<std::string> dims;
  tax::GroupCell cell;
  tax::Support support;
  bool tied = false;
  std::vector<int> variables;  // one per bracket; all equal when tied
};

/// Solver variables of a reform: the flattened rate set plus the frozen and
/// scaled rules that shape the coefficient rows.
///
/// Variables are ordered rates first, by (group, input, bracket), then lump
/// sums by (rule, group), then rule scales in rule order.
class Layout {
 public:
  /// Throws CompileError when the spec does not fit the code.
  Layout(const tax::TaxCode& code, const ReformSpec& spec, const io::Population& population);

  const tax::TaxCode& code() const { return *code_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<RateBlock>& rate_blocks() const { return rate_blocks_; }
  std::size_t size() const { return variables_.size(); }
  int find(const std::string& name) const;  // -1 when absent

  RuleMode mode(const tax::TaxRule& rule) const;
  /// Parameters a frozen rule is held at.
  const tax::TaxRule& frozen_rule(const std::string& id) const;
  /// Effective dimensions of a rate-mode input or lump rule, after merges.
  const std::vector<std::string>& input_dims(const std::string& input) const;
  bool effectively_eligible(const tax::TaxRule& rule, const tax::GroupKey& key) const;
  bool is_tied(const std::string& input) const;
  const std::vector<std::string>& merged_dimensions() const { return merged_; }

  /// Block of `input` covering `key`, or nullptr.
  const RateBlock* block(const std::string& input, const tax::GroupKey& key) const;
  /// Lump variable of `rule` covering `key`, or -1.
  int lump(const std::string& rule, const tax::GroupKey& key) const;
  int scale(const std::string& rule) const;

  /// Variables matched by a selector.
  std::vector<int> select(const VariableSelector& selector) const;

  /// The current code's value of each variable: the rate on the bracket
  /// for the first populated group of the block, the current lump sum, or 1
  /// for a scale.
  std::vector<double> current_values() const;

  /// A tax code whose evaluation equals the coefficient rows at `values`.
  tax::TaxCode materialize(const std::vector<double>& values) const;

 private:
  std::shared_ptr<const tax::TaxCode> code_;
  ReformSpec spec_;
  std::vector<std::string> merged_;
  std::vector<Variable> variables_;
  std::vector<RateBlock> rate_blocks_;
  std::map<std::string, int> by_name_;
  std::map<std::pair<std::string, tax::GroupCell>, int> block_index_;
  std::map<std::pair<std::string, tax::GroupCell>, int> lump_index_;
  std::map<std::string, std::vector<std::string>> input_dims_;
  std::map<std::string, std::vector<std::string>> lump_dims_;
  std::map<std::string, int> scale_index_;
  std::map<std::string, tax::TaxRule> frozen_;
  std::vector<tax::GroupKey> representative_;  // per variable
};

/// One taxpayer's tax as an affine function of the layout's variables:
/// tax = entries . values + constant.
struct CoefficientRow {
  std::string id;
  std::vector<lp::Entry> entries;  // sorted by column
  double constant = 0.0;
  double weight = 1.0;

  double evaluate(const std::vector<double>& values) const;
};

/// One row per taxpayer, in population order. Throws ValidationError naming
/// the taxpayer when a required input is missing.
std::vector<CoefficientRow> build_rows(const Layout& layout, const io::Population& population);

/// Per-taxpayer marginal pressure with respect to `wrt` as an affine
/// function of the variables (co-moving household inputs included).
CoefficientRow marginal_row(const Layout& layout, const io::Taxpayer& taxpayer,
                            const std::string& wrt);

}  // namespace fiscalopt::model
