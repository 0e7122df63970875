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

#include "fiscalopt/tax/groups.hpp"

#include <algorithm>

#include "fiscalopt/error.hpp"

namespace fiscalopt::tax {

std::vector<std::string> GroupDimension::labels() const {
  std::set<std::string> distinct;
  for (const auto& [value, label] : values) distinct.insert(label);
  return {distinct.begin(), distinct.end()};
}

GroupKey assign_group(const Characteristics& characteristics,
                      std::span<const GroupDimension> dimensions) {
  GroupKey key;
  key.reserve(dimensions.size());
  std::vector<std::string> issues;
  for (const auto& dim : dimensions) {
    auto it = characteristics.find(dim.characteristic);
    if (it == characteristics.end()) {
      issues.push_back("missing characteristic '" + dim.characteristic +
                       "' required by group dimension '" + dim.name + "'");
      key.emplace_back();
      continue;
    }
    auto label = dim.values.find(it->second);
    if (label == dim.values.end()) {
      issues.push_back("characteristic '" + dim.characteristic + "' has value '" +
                       it->second + "' which group dimension '" + dim.name +
                       "' does not map");
      key.emplace_back();
      continue;
    }
    key.push_back(label->second);
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return key;
}

std::string cell_name(std::span<const std::string> dimension_names,
                      const GroupCell& cell) {
  if (cell.empty()) return "*";
  std::string out;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (i) out += ';';
    out += dimension_names[i];
    out += '=';
    out += cell[i];
  }
  return out;
}

}  // namespace fiscalopt::tax
