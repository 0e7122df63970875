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

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiscalopt/io/population.hpp"
#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::io {

/// Distribution of one numeric input. A draw is zero with probability
/// zero_share and otherwise follows `kind`, clipped to [min, max].
struct Marginal {
  enum class Kind { Constant, Lognormal, Uniform, Poisson };
  Kind kind = Kind::Constant;
  double zero_share = 0.0;
  double value = 0.0;   // Constant
  double mean = 0.0;    // Lognormal (with median), Poisson
  double median = 0.0;
  double low = 0.0;     // Uniform
  double high = 0.0;
  double min = 0.0;
  double max = std::numeric_limits<double>::infinity();
  bool round = true;    // round draws to whole units
  /// Household inputs only: zero whenever this earlier-drawn input is
  /// positive (renters and owners, say).
  std::string unless;
};

struct SyntheticConfig {
  int taxpayers = 0;
  /// Households of one or two; taxpayers - households of them are couples.
  int households = 0;
  double weight = 1.0;
  std::string income_input = "income_before_tax";
  std::string household_income_input = "household_income";
  /// Drawn once per taxpayer.
  std::map<std::string, Marginal> personal;
  /// Drawn once per household and held by its first member.
  std::map<std::string, Marginal> household;
  /// Characteristic -> value -> share; shares sum to one.
  std::map<std::string, std::map<std::string, double>> characteristics;
  /// Characteristic -> household inputs; "yes" for every member of a
  /// household where any of them is positive, "no" otherwise.
  std::map<std::string, std::vector<std::string>> indicators;
  std::optional<std::uint64_t> seed;
};

/// Draws a population: every input and characteristic independently, as in
/// the published aggregate statistics. Couples get fiscal_partner = "yes"
/// and a partner_role of lowest_earner / highest_earner; singles get "no"
/// and "single". With `code`, current taxes are evaluated under it.
/// Throws ValidationError for inconsistent counts or shares and for a
/// missing seed.
Population generate_population(const SyntheticConfig& config, const tax::TaxCode* code = nullptr);

/// Parses a generator configuration from JSON.
SyntheticConfig parse_synthetic_config(std::string_view json);
std::string synthetic_config_to_json(const SyntheticConfig& config);

}  // namespace fiscalopt::io
