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
#include <string>
#include <vector>

#include "fiscalopt/io/population.hpp"
#include "fiscalopt/io/synthetic.hpp"
#include "fiscalopt/model/reform_spec.hpp"
#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::scenarios {

// Codes. Example 1: five brackets at 10..50% on 25k steps. Example 2 adds a
// 1 500 healthcare benefit phased out on income from 30k to 40k and 800 per
// child. Example 3 splits by employment and fiscal partnership, moves
// healthcare to household income (2 250 per couple over 30k..60k, 1 500 per
// single over 30k..40k) and exempts the first 15 000 of the self-employed.
// Example 4 is a 21-rule code in the shape of a real one, plus two rules
// reforms may not touch.
tax::TaxCode example1_code();
tax::TaxCode example2_code();
tax::TaxCode example3_code();
tax::TaxCode example4_code();

/// 98 incomes spread over 2 000..125 000 plus Jude (52 000) and Laila
/// (120 000), taxed under `code`.
io::Population example1_population(const tax::TaxCode& code);
/// As example 1, with 0..3 children each.
io::Population example2_population(const tax::TaxCode& code);
/// Couples and singles with uniform incomes on [0, 130 000], random
/// employment and children.
io::Population example3_population(const tax::TaxCode& code, int couples = 150, int singles = 100,
                                   std::uint64_t seed = 3);
/// 13 500 taxpayers in 8 500 households, weight 1 000, drawn independently
/// from published marginal statistics.
io::SyntheticConfig example4_config(std::uint64_t seed = 2028);

// Reform specs.
/// Structural settings for recovering a code: tied per-child amounts.
model::ReformSpec example_structure();
/// Net income +5% below 70 000, at most -10% above, budget neutral, rates
/// in [0, 1] and rising with the bracket.
model::ReformSpec example1_reform1();
/// Same guarantees without the budget; rates capped, minimal revenue loss.
model::ReformSpec example1_reform2(double cap = 0.6);
/// Reform 2 with the fewest non-zero rates among reforms losing at most
/// 100 000 more than its minimum.
model::ReformSpec example1_three_rates();
/// Reform 2 on the three-bracket support [50 000, 100 000].
model::ReformSpec example1_three_brackets();
/// Everyone pays less tax, and revenue must rise: infeasible.
model::ReformSpec universal_cut_with_revenue_gain();
/// Example 1 reform 2 guarantees with the existing rules and supports.
model::ReformSpec example2_reform1();
/// As reform 1 with the child benefit frozen at 800 and income brackets at
/// 25k steps only.
model::ReformSpec example2_reform2();
/// Personal guarantees as example 1, households lose at most 10%, one rate
/// schedule for all groups and a universal healthcare benefit.
model::ReformSpec example3_reform1();
/// Households lose at most 5% of net income, marginal pressure capped,
/// mortgage interest and severely handicapped rules frozen, every other
/// rule scaled on [0, 1.2]; minimal loss, then fewest rules within a
/// 100 million budget slack.
model::ReformSpec example4_reform(double cap = 0.75);

/// One bundled scenario, as shipped in the fixture directory.
struct Scenario {
  std::string id;
  std::string title;
  std::string code;        // file names relative to the fixture directory
  std::string population;  // CSV population, or
  std::string generator;   // synthetic generator config
  std::string spec;
  std::string command;     // recover, reform, two-step or sweep
  std::vector<double> caps;
  double slack = 0.0;
};

std::vector<Scenario> bundled_scenarios();

/// Fixture files (relative path -> content) for every bundled scenario plus
/// an index.json describing them.
std::vector<std::pair<std::string, std::string>> scenario_fixtures();

}  // namespace fiscalopt::scenarios
