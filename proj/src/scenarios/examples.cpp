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

#include "fiscalopt/scenarios/examples.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>

#include "fiscalopt/report/documents.hpp"

namespace fiscalopt::scenarios {

namespace {

using tax::RuleKind;
using tax::RuleParams;
using tax::Support;
using tax::TaxRule;

const std::string kIncome = "income_before_tax";
const std::string kHousehold = "household_income";

TaxRule rule(std::string id, RuleKind kind, std::string input, std::string topic, RuleParams params) {
  TaxRule r;
  r.id = std::move(id);
  r.kind = kind;
  r.input = std::move(input);
  r.topic = std::move(topic);
  r.params[{}] = std::move(params);
  return r;
}

RuleParams brackets(std::vector<double> cutoffs, std::vector<double> rates, double lump = 0.0) {
  return RuleParams{Support(std::move(cutoffs)), std::move(rates), lump};
}

/// A lump-sum benefit withdrawn linearly between `from` and `to`.
RuleParams phase_out(double lump, double from, double to) {
  return brackets({from, to}, {0.0, -lump / (to - from), 0.0}, lump);
}

TaxRule income_tax() {
  return rule("income_tax", RuleKind::Bracket, kIncome, "income_brackets",
              brackets({25000, 50000, 75000, 100000}, {0.1, 0.2, 0.3, 0.4, 0.5}));
}

TaxRule child_benefit(double amount) {
  std::vector<double> cutoffs;
  for (int c = 1; c <= 100; ++c) cutoffs.push_back(c);
  return rule("child_benefit", RuleKind::Bracket, "children", "children",
              brackets(std::move(cutoffs), std::vector<double>(101, -amount)));
}

io::Population taxed(const tax::TaxCode& code, std::vector<io::Taxpayer> taxpayers,
                     std::map<std::string, std::string> metadata) {
  for (auto& t : taxpayers) t.current_tax = tax::evaluate_code(code, t.profile());
  return io::Population(std::move(taxpayers), std::move(metadata));
}

/// 98 incomes spread over 2 000..125 000, then Jude and Laila.
std::vector<io::Taxpayer> example1_taxpayers() {
  std::vector<io::Taxpayer> taxpayers;
  for (int i = 0; i < 98; ++i) {
    io::Taxpayer t;
    t.id = "t" + std::to_string(i);
    t.inputs = {{kIncome, std::round(2000.0 + i * 123000.0 / 97.0)}};
    taxpayers.push_back(std::move(t));
  }
  for (auto [id, income] : {std::pair<const char*, double>{"jude", 52000}, {"laila", 120000}}) {
    io::Taxpayer t;
    t.id = id;
    t.inputs = {{kIncome, income}};
    taxpayers.push_back(std::move(t));
  }
  return taxpayers;
}

model::Selector below(double income) {
  model::Selector s;
  s.income_max = income;
  return s;
}

model::Selector above(double income) {
  model::Selector s;
  s.income_min = income;
  return s;
}

/// +5% net income below 70 000, at most -10% above.
std::vector<model::ConstraintSpec> example1_guarantees() {
  return {{"gain_below_70k", model::IncomeRelative{below(70000), 0.05}},
          {"loss_above_70k", model::IncomeRelative{above(70000), -0.10}}};
}

model::VariableSelector rates_of(std::string input = {}) {
  model::VariableSelector v;
  v.kind = model::VariableSelector::Kind::Rate;
  v.input = std::move(input);
  return v;
}

model::ConstraintSpec rate_cap(double cap) {
  model::RateBound b;
  b.variables = rates_of();
  b.upper = cap;
  return {"rate_cap", b};
}

/// Per-child amounts may be a benefit of up to 2 000.
model::RateBound child_bounds() {
  model::RateBound b;
  b.variables = rates_of("children");
  b.lower = -2000.0;
  b.upper = 0.0;
  return b;
}

}  // namespace

tax::TaxCode example1_code() { return tax::TaxCode("example1", {}, {income_tax()}); }

tax::TaxCode example2_code() {
  return tax::TaxCode("example2", {},
                      {income_tax(),
                       rule("healthcare", RuleKind::Benefit, kIncome, "healthcare", phase_out(-1500, 30000, 40000)),
                       child_benefit(800)});
}

tax::TaxCode example3_code() {
  std::vector<tax::GroupDimension> dims{
      {"employment", "employment", {{"labor", "labor"}, {"self_employed", "self_employed"}}},
      {"partner", "fiscal_partner", {{"yes", "fiscal_partner"}, {"no", "single"}}}};
  TaxRule health;
  health.id = "healthcare";
  health.kind = RuleKind::Benefit;
  health.input = kHousehold;
  health.group_by = {"partner"};
  health.topic = "healthcare";
  health.params[{"fiscal_partner"}] = phase_out(-1125, 30000, 60000);
  health.params[{"single"}] = phase_out(-1500, 30000, 40000);
  TaxRule credit;
  credit.id = "self_employed_credit";
  credit.kind = RuleKind::TaxCreditingDeductible;
  credit.input = kIncome;
  credit.credited_rule = "income_tax";
  credit.eligibility["employment"] = {"self_employed"};
  credit.topic = "self_employed";
  credit.params[{}] = RuleParams{Support(), {}, 0.0, 15000};
  return tax::TaxCode("example3", dims, {income_tax(), health, child_benefit(800), credit});
}

tax::TaxCode example4_code() {
  std::vector<tax::GroupDimension> dims{
      {"source", "income_source",
       {{"benefits", "benefits"}, {"employment", "employment"}, {"self_employed", "self_employed"}}},
      {"partner", "fiscal_partner", {{"yes", "partner"}, {"no", "single"}}},
      {"pension", "pension_age", {{"yes", "yes"}, {"no", "no"}}},
      {"role", "partner_role",
       {{"lowest_earner", "lowest_earner"}, {"highest_earner", "highest_earner"}, {"single", "single"}}},
      {"children", "has_children", {{"yes", "yes"}, {"no", "no"}}},
      {"tenure", "renter", {{"yes", "renter"}, {"no", "owner"}}},
      {"handicap", "severely_handicapped", {{"yes", "yes"}, {"no", "no"}}}};
  // Household benefits are paid once, to the lowest earner or the single.
  const std::set<std::string> payee{"lowest_earner", "single"};
  std::vector<TaxRule> rules;
  auto add = [&](TaxRule r, std::map<std::string, std::set<std::string>> eligibility = {}) {
    r.eligibility = std::move(eligibility);
    rules.push_back(std::move(r));
  };
  const std::vector<double> tax_cutoffs{38441, 76817};

  // Income brackets
  add(rule("income_tax", RuleKind::Bracket, kIncome, "income_brackets",
           brackets(tax_cutoffs, {0.3582, 0.3748, 0.495})),
      {{"pension", {"no"}}});
  add(rule("income_tax_pension_age", RuleKind::Bracket, kIncome, "income_brackets",
           brackets(tax_cutoffs, {0.1785, 0.3748, 0.495})),
      {{"pension", {"yes"}}});
  add(rule("general_credit", RuleKind::Benefit, kIncome, "income_brackets", phase_out(-3068, 24812, 71100)),
      {{"pension", {"no"}}});
  add(rule("general_credit_pension_age", RuleKind::Benefit, kIncome, "income_brackets",
           phase_out(-1600, 24812, 71100)),
      {{"pension", {"yes"}}});
  // Labor contract: builds up with earnings, then phases out.
  add(rule("labor_credit", RuleKind::Bracket, kIncome, "labor_contract",
           brackets({11490, 24820, 39957, 124934}, {-0.08425, -0.31433, -0.02471, 0.0651, 0.0})),
      {{"source", {"employment"}}});
  // Self-employed
  add(rule("self_employed_deduction", RuleKind::Bracket, kIncome, "self_employed",
           brackets({3750}, {-0.3582, 0.0})),
      {{"source", {"self_employed"}}});
  add(rule("starter_allowance", RuleKind::Benefit, "", "self_employed", brackets({}, {0.0}, -400)),
      {{"source", {"self_employed"}}});
  // Children
  {
    std::vector<double> cutoffs;
    for (int c = 1; c <= 10; ++c) cutoffs.push_back(c);
    add(rule("child_benefit", RuleKind::Bracket, "children", "children",
             brackets(std::move(cutoffs), std::vector<double>(11, -1100))));
  }
  add(rule("child_budget", RuleKind::Benefit, kHousehold, "children", phase_out(-1200, 28000, 45778)),
      {{"children", {"yes"}}, {"role", payee}});
  add(rule("childcare_allowance", RuleKind::Benefit, kHousehold, "children", phase_out(-2500, 25000, 56250)),
      {{"children", {"yes"}}, {"role", payee}});
  // Rental support, healthcare, home value
  add(rule("rent_benefit", RuleKind::Benefit, kHousehold, "rental_support", phase_out(-3000, 18000, 38000)),
      {{"tenure", {"renter"}}, {"role", payee}});
  {
    TaxRule health;
    health.id = "healthcare";
    health.kind = RuleKind::Benefit;
    health.input = kHousehold;
    health.group_by = {"partner"};
    health.topic = "healthcare";
    health.params[{"partner"}] = phase_out(-2200, 30000, 60000);
    health.params[{"single"}] = phase_out(-1300, 28000, 40000);
    add(std::move(health), {{"role", payee}});
  }
  add(rule("home_value_tax", RuleKind::Bracket, "home_value", "home_value", brackets({}, {0.0013})));
  // Double earners
  add(rule("combination_credit", RuleKind::Bracket, kIncome, "double_earner",
           brackets({6239, 31500}, {0.0, -0.115, 0.0})),
      {{"role", {"lowest_earner"}}, {"children", {"yes"}}});
  // Single households
  add(rule("single_parent_credit", RuleKind::Bracket, kIncome, "single_households",
           brackets({6239, 38000}, {0.0, -0.06, 0.0})),
      {{"partner", {"single"}}, {"children", {"yes"}}});
  add(rule("single_rent_supplement", RuleKind::Benefit, kHousehold, "single_households",
           phase_out(-600, 25000, 35000)),
      {{"partner", {"single"}}, {"tenure", {"renter"}}});
  add(rule("single_healthcare_supplement", RuleKind::Benefit, kHousehold, "single_households",
           phase_out(-400, 25000, 35000)),
      {{"partner", {"single"}}});
  // Elderly
  add(rule("elderly_credit", RuleKind::Benefit, kIncome, "elderly", phase_out(-2010, 44770, 58170)),
      {{"pension", {"yes"}}});
  add(rule("elderly_single_credit", RuleKind::Benefit, "", "elderly", brackets({}, {0.0}, -524)),
      {{"pension", {"yes"}}, {"partner", {"single"}}});
  add(rule("pension_supplement", RuleKind::Benefit, "", "elderly", brackets({}, {0.0}, -300)),
      {{"pension", {"yes"}}});
  add(rule("elderly_home_discount", RuleKind::Bracket, "home_value", "elderly", brackets({}, {-0.0005})),
      {{"pension", {"yes"}}});
  // Outside any reform
  add(rule("mortgage_interest", RuleKind::Bracket, "home_value", "mortgage_interest", brackets({}, {-0.004})),
      {{"tenure", {"owner"}}});
  add(rule("severely_handicapped", RuleKind::Benefit, "", "severely_handicapped", brackets({}, {0.0}, -1200)),
      {{"handicap", {"yes"}}});
  return tax::TaxCode("example4", dims, std::move(rules));
}

io::Population example1_population(const tax::TaxCode& code) {
  return taxed(code, example1_taxpayers(), {{"example", "1"}});
}

io::Population example2_population(const tax::TaxCode& code) {
  auto taxpayers = example1_taxpayers();
  for (std::size_t i = 0; i < taxpayers.size(); ++i) {
    taxpayers[i].inputs["children"] = static_cast<double>((i * 7) % 4);
  }
  return taxed(code, std::move(taxpayers), {{"example", "2"}});
}

io::Population example3_population(const tax::TaxCode& code, int couples, int singles, std::uint64_t seed) {
  boost::random::mt19937_64 rng(seed);
  boost::random::uniform_real_distribution<double> income(0.0, 130000.0);
  boost::random::uniform_int_distribution<int> children(0, 3);
  boost::random::uniform_int_distribution<int> self_employed(0, 4);  // one in five
  auto person = [&](std::string id, std::string household, bool partner) {
    io::Taxpayer t;
    t.id = std::move(id);
    t.household_id = std::move(household);
    t.inputs[kIncome] = std::round(income(rng));
    t.inputs["children"] = 0.0;
    t.characteristics["employment"] = self_employed(rng) == 0 ? "self_employed" : "labor";
    t.characteristics["fiscal_partner"] = partner ? "yes" : "no";
    return t;
  };
  std::vector<io::Taxpayer> taxpayers;
  for (int h = 0; h < couples; ++h) {
    const std::string hid = "c" + std::to_string(h);
    auto a = person(hid + "a", hid, true);
    auto b = person(hid + "b", hid, true);
    a.inputs["children"] = children(rng);
    const double total = a.inputs[kIncome] + b.inputs[kIncome];
    a.inputs[kHousehold] = b.inputs[kHousehold] = total;
    taxpayers.push_back(std::move(a));
    taxpayers.push_back(std::move(b));
  }
  for (int s = 0; s < singles; ++s) {
    auto t = person("s" + std::to_string(s), "", false);
    t.inputs["children"] = children(rng);
    t.inputs[kHousehold] = t.inputs[kIncome];
    taxpayers.push_back(std::move(t));
  }
  return taxed(code, std::move(taxpayers), {{"example", "3"}, {"seed", std::to_string(seed)}});
}

io::SyntheticConfig example4_config(std::uint64_t seed) {
  using K = io::Marginal::Kind;
  io::SyntheticConfig c;
  c.taxpayers = 13500;
  c.households = 8500;
  c.weight = 1000.0;
  c.seed = seed;
  io::Marginal income;
  income.kind = K::Lognormal;
  income.mean = 33194.31;
  income.median = 27011;
  income.max = 417454;
  c.personal[kIncome] = income;
  io::Marginal assets;
  assets.kind = K::Lognormal;
  assets.mean = 83854.22;
  assets.median = 77872;
  assets.max = 221378;
  c.personal["assets"] = assets;
  io::Marginal kids;
  kids.kind = K::Poisson;
  kids.mean = 0.6;
  kids.max = 10;
  c.household["children"] = kids;
  // Owners hold the home value; the remaining households rent.
  io::Marginal home;
  home.kind = K::Lognormal;
  home.zero_share = 0.43;
  home.mean = 371000;
  home.median = 330000;
  home.min = 50000;
  home.max = 542565;
  c.household["home_value"] = home;
  io::Marginal rent;
  rent.kind = K::Lognormal;
  rent.mean = 1230;
  rent.median = 1150;
  rent.min = 300;
  rent.max = 2549;
  rent.unless = "home_value";
  c.household["monthly_rent"] = rent;
  c.characteristics["income_source"] = {{"benefits", 0.245}, {"employment", 0.65}, {"self_employed", 0.105}};
  c.characteristics["pension_age"] = {{"yes", 0.245}, {"no", 0.755}};
  c.characteristics["severely_handicapped"] = {{"yes", 0.02}, {"no", 0.98}};
  c.indicators["has_children"] = {"children"};
  c.indicators["renter"] = {"monthly_rent"};
  return c;
}

model::ReformSpec example_structure() {
  model::ReformSpec s;
  s.tied_inputs = {"children"};
  return s;
}

model::ReformSpec example1_reform1() {
  model::ReformSpec s;
  s.name = "example1_reform1";
  s.constraints = example1_guarantees();
  s.constraints.push_back({"budget_neutral", model::Budget{model::Budget::Kind::Neutral}});
  s.constraints.push_back({"rising_rates", model::RateMonotone{rates_of(kIncome), true}});
  s.objective.kind = model::ObjectiveKind::Feasibility;
  return s;
}

model::ReformSpec example1_reform2(double cap) {
  model::ReformSpec s;
  s.name = "example1_reform2";
  s.constraints = example1_guarantees();
  s.constraints.push_back(rate_cap(cap));
  s.objective.kind = model::ObjectiveKind::MinRevenueLoss;
  return s;
}

model::ReformSpec example1_three_rates() {
  model::ReformSpec s = example1_reform2(0.6);
  s.name = "example1_three_rates";
  s.objective.kind = model::ObjectiveKind::Lexicographic;
  s.objective.first = model::ObjectiveKind::MinRevenueLoss;
  s.objective.then = model::ObjectiveKind::MinComplexity;
  s.objective.income_dependent_weight = 1.0;
  s.objective.slack = 100000.0;
  return s;
}

model::ReformSpec example1_three_brackets() {
  model::ReformSpec s = example1_reform2(0.6);
  s.name = "example1_three_brackets";
  s.support_overrides.push_back({kIncome, {}, Support({50000, 100000})});
  return s;
}

model::ReformSpec universal_cut_with_revenue_gain() {
  model::ReformSpec s;
  s.name = "universal_cut_with_revenue_gain";
  s.constraints.push_back({"everyone_pays_less", model::IncomeRelative{{}, 0.01}});
  s.constraints.push_back({"revenue_rises", model::Budget{model::Budget::Kind::LossAtMost, -0.01, true}});
  s.objective.kind = model::ObjectiveKind::MinRevenueLoss;
  return s;
}

model::ReformSpec example2_reform1() {
  model::ReformSpec s = example1_reform2(0.6);
  s.name = "example2_reform1";
  s.tied_inputs = {"children"};
  s.variable_bounds.push_back(child_bounds());
  return s;
}

model::ReformSpec example2_reform2() {
  model::ReformSpec s = example2_reform1();
  s.name = "example2_reform2";
  s = model::freeze_rule(std::move(s), "child_benefit");
  s.support_overrides.push_back({kIncome, {}, Support({25000, 50000, 75000, 100000})});
  return s;
}

model::ReformSpec example3_reform1() {
  model::ReformSpec s;
  s.name = "example3_reform1";
  s.constraints = example1_guarantees();
  model::Selector households;
  households.level = model::Selector::Level::Household;
  s.constraints.push_back({"household_loss", model::IncomeRelative{households, -0.10}});
  s.constraints.push_back(rate_cap(0.6));
  s.objective.kind = model::ObjectiveKind::MinRevenueLoss;
  s.tied_inputs = {"children"};
  s.merged_dimensions = {"employment", "partner"};
  s.variable_bounds.push_back(child_bounds());
  // A universal healthcare benefit: no phase-out on household income.
  s.support_overrides.push_back({kHousehold, {}, Support()});
  model::RateBound flat;
  flat.variables = rates_of(kHousehold);
  flat.lower = 0.0;
  flat.upper = 0.0;
  s.variable_bounds.push_back(flat);
  return s;
}

model::ReformSpec example4_reform(double cap) {
  model::ReformSpec s;
  s.name = "example4_reform";
  model::Selector households;
  households.level = model::Selector::Level::Household;
  s.constraints.push_back({"household_shock", model::IncomeRelative{households, -0.05}});
  s.constraints.push_back({"marginal_cap", model::MarginalCap{{}, cap}});
  s.objective.kind = model::ObjectiveKind::Lexicographic;
  s.objective.first = model::ObjectiveKind::MinRevenueLoss;
  s.objective.then = model::ObjectiveKind::MinComplexity;
  s.objective.income_dependent_weight = 2.0;
  s.objective.slack = 1e8;
  const auto code = example4_code();
  for (const auto& r : code.rules()) {
    model::RuleSetting setting;
    setting.mode = model::RuleMode::Scale;
    s.rules[r.id] = setting;
  }
  s = model::freeze_rule(std::move(s), "mortgage_interest");
  s = model::freeze_rule(std::move(s), "severely_handicapped");
  return s;
}

std::vector<Scenario> bundled_scenarios() {
  std::vector<Scenario> out;
  auto add = [&](Scenario s) { out.push_back(std::move(s)); };
  add({"example1_recover", "Example 1: recover the five-bracket system", "example1/code.json",
       "example1/population.csv", "", "example1/structure.json", "recover", {}, 0.0});
  add({"example1_reform1", "Example 1: +5% below 70k, budget neutral", "example1/code.json",
       "example1/population.csv", "", "example1/reform1.json", "reform", {}, 0.0});
  add({"example1_reform2", "Example 1: rates capped at 60%, minimal loss", "example1/code.json",
       "example1/population.csv", "", "example1/reform2.json", "reform", {}, 0.0});
  add({"example1_three_rates", "Example 1: fewest non-zero rates", "example1/code.json",
       "example1/population.csv", "", "example1/three_rates.json", "reform", {}, 0.0});
  add({"example1_three_brackets", "Example 1: three brackets", "example1/code.json",
       "example1/population.csv", "", "example1/three_brackets.json", "reform", {}, 0.0});
  add({"example1_contradiction", "Example 1: universal tax cut with a revenue gain", "example1/code.json",
       "example1/population.csv", "", "example1/contradiction.json", "reform", {}, 0.0});
  add({"example2_recover", "Example 2: recover brackets, healthcare and child benefit", "example2/code.json",
       "example2/population.csv", "", "example2/structure.json", "recover", {}, 0.0});
  add({"example2_reform1", "Example 2: reform with every parameter", "example2/code.json",
       "example2/population.csv", "", "example2/reform1.json", "reform", {}, 0.0});
  add({"example2_reform2", "Example 2: child benefit frozen, four income cutoffs", "example2/code.json",
       "example2/population.csv", "", "example2/reform2.json", "reform", {}, 0.0});
  add({"example3_recover", "Example 3: recover rates per tax group", "example3/code.json",
       "example3/population.csv", "", "example3/structure.json", "recover", {}, 0.0});
  add({"example3_reform1", "Example 3: one schedule, universal healthcare", "example3/code.json",
       "example3/population.csv", "", "example3/reform1.json", "reform", {}, 0.0});
  add({"example4_two_step", "Example 4: cap 75%, then fewer rules", "example4/code.json", "",
       "example4/generator.json", "example4/reform.json", "two-step", {}, 1e8});
  add({"example4_frontier", "Example 4: loss against the marginal cap", "example4/code.json", "",
       "example4/generator.json", "example4/reform.json", "sweep", {0.65, 0.70, 0.75, 0.80}, 1e8});
  return out;
}

std::vector<std::pair<std::string, std::string>> scenario_fixtures() {
  std::vector<std::pair<std::string, std::string>> files;
  auto json = [&](std::string path, const report::Json& doc) { files.emplace_back(std::move(path), doc.dump(2) + "\n"); };
  auto spec = [&](std::string path, const model::ReformSpec& s) { json(std::move(path), report::spec_to_json(s)); };

  const auto c1 = example1_code();
  json("example1/code.json", report::code_to_json(c1));
  files.emplace_back("example1/population.csv", io::population_to_csv(example1_population(c1)));
  spec("example1/structure.json", model::ReformSpec{});
  spec("example1/reform1.json", example1_reform1());
  spec("example1/reform2.json", example1_reform2());
  spec("example1/three_rates.json", example1_three_rates());
  spec("example1/three_brackets.json", example1_three_brackets());
  spec("example1/contradiction.json", universal_cut_with_revenue_gain());

  const auto c2 = example2_code();
  json("example2/code.json", report::code_to_json(c2));
  files.emplace_back("example2/population.csv", io::population_to_csv(example2_population(c2)));
  spec("example2/structure.json", example_structure());
  spec("example2/reform1.json", example2_reform1());
  spec("example2/reform2.json", example2_reform2());

  const auto c3 = example3_code();
  json("example3/code.json", report::code_to_json(c3));
  files.emplace_back("example3/population.csv", io::population_to_csv(example3_population(c3)));
  spec("example3/structure.json", example_structure());
  spec("example3/reform1.json", example3_reform1());

  json("example4/code.json", report::code_to_json(example4_code()));
  files.emplace_back("example4/generator.json", io::synthetic_config_to_json(example4_config()));
  spec("example4/reform.json", example4_reform());

  report::Json index = report::Json::array();
  for (const auto& s : bundled_scenarios()) {
    report::Json j{{"id", s.id}, {"title", s.title}, {"code", s.code}, {"spec", s.spec}, {"command", s.command}};
    if (!s.population.empty()) j["population"] = s.population;
    if (!s.generator.empty()) j["generator"] = s.generator;
    if (!s.caps.empty()) j["caps"] = s.caps;
    if (s.slack > 0.0) j["slack"] = s.slack;
    index.push_back(std::move(j));
  }
  json("index.json", index);
  return files;
}

}  // namespace fiscalopt::scenarios
