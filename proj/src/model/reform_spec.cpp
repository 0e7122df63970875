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

#include "fiscalopt/model/reform_spec.hpp"

#include <algorithm>

namespace fiscalopt::model {

ReformSpec freeze_rule(ReformSpec spec, const std::string& id,
                       std::optional<std::map<tax::GroupCell, tax::RuleParams>> params) {
  RuleSetting& setting = spec.rules[id];
  setting.mode = RuleMode::Frozen;
  setting.params = std::move(params);
  return spec;
}

ReformSpec merge_groups(ReformSpec spec, const std::string& dimension) {
  auto& merged = spec.merged_dimensions;
  if (std::find(merged.begin(), merged.end(), dimension) == merged.end()) {
    merged.push_back(dimension);
  }
  return spec;
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Feasibility: return "feasibility";
    case ObjectiveKind::MinRevenueLoss: return "min_revenue_loss";
    case ObjectiveKind::MinComplexity: return "min_complexity";
    case ObjectiveKind::MinRates: return "min_rates";
    case ObjectiveKind::Lexicographic: return "lexicographic";
  }
  return "?";
}

std::string_view to_string(RuleMode mode) {
  switch (mode) {
    case RuleMode::Rate: return "rate";
    case RuleMode::Scale: return "scale";
    case RuleMode::Frozen: return "frozen";
  }
  return "?";
}

}  // namespace fiscalopt::model
