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
#include <set>
#include <span>
#include <string>
#include <vector>

namespace fiscalopt::tax {

/// Input name -> non-negative value (currency units or counts).
using InputVector = std::map<std::string, double, std::less<>>;
/// Characteristic name -> categorical value ("self_employed", "yes", ...).
using Characteristics = std::map<std::string, std::string, std::less<>>;

/// One axis along which taxpayers are split into tax groups.
///
/// `values` maps each admissible value of `characteristic` to a group label;
/// several values may share a label. A taxpayer whose value is not listed is
/// rejected.
struct GroupDimension {
  std::string name;
  std::string characteristic;
  std::map<std::string, std::string> values;

  /// Distinct labels, sorted.
  std::vector<std::string> labels() const;
};

/// One label per dimension of the owning code, in dimension order.
using GroupKey = std::vector<std::string>;

/// Labels of a subset of dimensions; identifies the parameters a rule (or a
/// block of rates) applies to a taxpayer.
using GroupCell = std::vector<std::string>;

/// Deterministic and total: every taxpayer lands in exactly one label per
/// dimension. Throws ValidationError naming the missing or unmapped field.
GroupKey assign_group(const Characteristics& characteristics,
                      std::span<const GroupDimension> dimensions);

/// "dim=label;dim=label", or "*" for the empty projection.
std::string cell_name(std::span<const std::string> dimension_names,
                      const GroupCell& cell);

}  // namespace fiscalopt::tax
