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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::io {

struct Taxpayer {
  std::string id;
  tax::InputVector inputs;
  tax::Characteristics characteristics;
  double weight = 1.0;        // persons represented
  std::string household_id;   // empty: a household of one
  double current_tax = 0.0;   // y', signed

  tax::TaxpayerProfile profile() const { return {inputs, characteristics}; }

  friend bool operator==(const Taxpayer&, const Taxpayer&) = default;
};

struct Household {
  std::string id;
  std::vector<std::size_t> members;  // indices into Population::taxpayers

  friend bool operator==(const Household&, const Household&) = default;
};

struct PopulationOptions {
  /// Household input -> personal input whose member sum it must equal.
  std::map<std::string, std::string> household_sums{{"household_income", "income_before_tax"}};
  double household_tolerance = 1e-6;
};

class Population {
 public:
  Population() = default;
  /// Validates and indexes; throws ValidationError listing every problem.
  explicit Population(std::vector<Taxpayer> taxpayers,
                      std::map<std::string, std::string> metadata = {},
                      const PopulationOptions& options = {});

  const std::vector<Taxpayer>& taxpayers() const { return taxpayers_; }
  const std::vector<Household>& households() const { return households_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }
  std::size_t size() const { return taxpayers_.size(); }

  std::size_t index_of(std::string_view id) const;

  /// Every household, plus one single-member unit per taxpayer without a
  /// household, in order of first member.
  std::vector<std::vector<std::size_t>> units() const;

  friend bool operator==(const Population& a, const Population& b) {
    return a.taxpayers_ == b.taxpayers_ && a.metadata_ == b.metadata_;
  }

 private:
  std::vector<Taxpayer> taxpayers_;
  std::vector<Household> households_;
  std::map<std::string, std::string> metadata_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

/// Parses a population from delimited text or JSON (detected from the first
/// non-blank character).
///
/// Delimited text: a header row, then one row per taxpayer. Columns id,
/// household_id, weight and current_tax are reserved; an optional
/// "# characteristics: a,b" line names the categorical columns (without it,
/// any column holding a non-numeric value is categorical). All other columns
/// are numeric inputs. "# key: value" lines before the header are metadata.
Population parse_population(std::string_view text, const PopulationOptions& options = {});
Population load_population(const std::filesystem::path& path,
                           const PopulationOptions& options = {});

std::string population_to_csv(const Population& population);
std::string population_to_json(const Population& population);

}  // namespace fiscalopt::io
