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

#include <doctest.h>

#include <cmath>
#include <random>

#include "fiscalopt/error.hpp"
#include "fiscalopt/lp/audit.hpp"
#include "fiscalopt/lp/mps.hpp"
#include "fiscalopt/lp/solver.hpp"
#include "fiscalopt/model/compile.hpp"
#include "support/codes.hpp"
#include "support/populations.hpp"

using namespace fiscalopt;
using namespace fiscalopt::model;
using fiscalopt::testing::example1_code;
using fiscalopt::testing::example2_code;
using fiscalopt::testing::example3_code;

namespace {

ReformSpec tight_spec() {
  ReformSpec spec;
  spec.constraints.push_back({"tight", IncomeTight{}});
  return spec;
}

Selector income_range(std::optional<double> lo, std::optional<double> hi) {
  Selector s;
  s.income_min = lo;
  s.income_max = hi;
  return s;
}

std::vector<double> random_values(const Layout& layout, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(-1.0, 1.0), lump(-3000.0, 3000.0), scale(0.0, 1.2);
  std::vector<double> v;
  for (const auto& var : layout.variables()) {
    switch (var.kind) {
      case VariableKind::Rate: v.push_back(rate(rng)); break;
      case VariableKind::Lump: v.push_back(lump(rng)); break;
      case VariableKind::Scale: v.push_back(scale(rng)); break;
    }
  }
  return v;
}

// Rows and the materialized code must price every taxpayer identically.
void check_row_consistency(const tax::TaxCode& code, const io::Population& pop,
                           const ReformSpec& spec, int draws) {
  const Layout layout(code, spec, pop);
  const auto rows = build_rows(layout, pop);
  std::mt19937_64 rng(11);
  for (int d = 0; d < draws; ++d) {
    const auto v = random_values(layout, rng);
    const tax::TaxCode reform = layout.materialize(v);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& t = pop.taxpayers()[i];
      const double direct = tax::evaluate_code(reform, t.profile());
      REQUIRE(rows[i].evaluate(v) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
      if (d % 10 == 0) {
        const double m = marginal_row(layout, t, "income_before_tax").evaluate(v);
        REQUIRE(m == doctest::Approx(tax::marginal_pressure(reform, t.profile(), "income_before_tax"))
                         .epsilon(1e-12));
      }
    }
  }
}

}  // namespace

TEST_CASE("coefficient rows of the worked example") {
  const auto code = example1_code();
  const auto pop = testing::example1_population(code);
  const Layout layout(code, tight_spec(), pop);
  CHECK(layout.size() == 5);
  const auto rows = build_rows(layout, pop);
  const auto& jude = rows[pop.index_of("jude")];
  std::vector<double> dense(5, 0.0);
  for (const auto& e : jude.entries) dense[static_cast<std::size_t>(e.column)] = e.value;
  CHECK(dense == std::vector<double>{25000, 25000, 2000, 0, 0});
  CHECK(jude.constant == 0.0);
  CHECK(layout.variables()[0].name == "rate[*|income_before_tax|0]");

  io::Population zero({io::Taxpayer{"z", {{"income_before_tax", 0.0}}, {}, 1.0, "", 0.0}});
  const auto zero_rows = build_rows(Layout(code, tight_spec(), zero), zero);
  CHECK(zero_rows[0].entries.empty());
  CHECK(zero_rows[0].constant == 0.0);
}

TEST_CASE("frozen child benefit moves into the constant") {
  const auto code = example2_code();
  const auto pop = testing::example2_population(code);
  const auto spec = freeze_rule(tight_spec(), "child_benefit");
  const Layout layout(code, spec, pop);
  for (const auto& v : layout.variables()) CHECK(v.input != "children");
  const auto rows = build_rows(layout, pop);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].constant == -800.0 * pop.taxpayers()[i].inputs.at("children"));
  }
}

TEST_CASE("missing input names the taxpayer") {
  const auto code = example2_code();
  io::Population pop({io::Taxpayer{"lonely", {{"income_before_tax", 1.0}, {"household_income", 1.0}}, {}, 1.0, "", 0.0}});
  try {
    (void)build_rows(Layout(code, tight_spec(), pop), pop);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("lonely") != std::string::npos);
    CHECK(std::string(e.what()).find("children") != std::string::npos);
  }
}

TEST_CASE("row consistency over random rate sets") {
  const auto code = example3_code();
  const auto pop = testing::example3_population(code, 30, 40, 5);
  ReformSpec rate_mode;
  check_row_consistency(code, pop, rate_mode, 400);

  ReformSpec merged = merge_groups(rate_mode, "partner");
  merged = merge_groups(merged, "employment");
  merged.tied_inputs = {"children"};
  check_row_consistency(code, pop, merged, 300);

  ReformSpec mixed;
  mixed.rules["healthcare"].mode = RuleMode::Scale;
  mixed.rules["self_employed_credit"].mode = RuleMode::Scale;
  mixed = freeze_rule(mixed, "child_benefit");
  mixed.support_overrides.push_back({"income_before_tax", {{"employment", "labor"}}, tax::Support({40000, 80000})});
  check_row_consistency(code, pop, mixed, 300);
}

TEST_CASE("merging a dimension aliases its variables") {
  const auto code = example3_code();
  const auto pop = testing::example3_population(code, 10, 10, 1);
  const Layout split(code, ReformSpec{}, pop);
  const Layout merged(code, merge_groups(ReformSpec{}, "partner"), pop);
  VariableSelector lumps;
  lumps.kind = VariableSelector::Kind::Lump;
  CHECK(split.select(lumps).size() == 2);
  CHECK(merged.select(lumps).size() == 1);
  // Merging a dimension no rule depends on changes nothing.
  const auto e1 = example1_code();
  const auto p1 = testing::example1_population(e1);
  CHECK(Layout(e1, ReformSpec{}, p1).size() == 5);
}

TEST_CASE("example 1 recovery compiles to 100 equalities and recovers the rates") {
  const auto code = example1_code();
  const auto pop = testing::example1_population(code);
  const auto compiled = compile(code, pop, tight_spec());
  CHECK(compiled.problem.column_count() == 5);
  CHECK(compiled.problem.row_count() == 100);
  for (const auto& r : compiled.problem.rows()) CHECK(r.sense == lp::RowSense::Equal);
  for (const auto& c : compiled.problem.columns()) CHECK(c.cost == 0.0);
  const auto sol = lp::solve(compiled.problem);
  REQUIRE(sol.status == lp::Status::Optimal);
  const auto v = compiled.values(sol);
  const std::vector<double> expected{0.1, 0.2, 0.3, 0.4, 0.5};
  for (std::size_t j = 0; j < 5; ++j) CHECK(v[j] == doctest::Approx(expected[j]).epsilon(1e-9));
  CHECK(audit_reform(compiled, pop, tight_spec(), v).empty());
}

TEST_CASE("the current system satisfies its own tight constraints") {
  const auto code = example3_code();
  const auto pop = testing::example3_population(code, 20, 20, 3);
  ReformSpec spec = tight_spec();
  spec.lump_lower = -5000;
  spec.variable_bounds.push_back({{VariableSelector::Kind::Rate, "", "", {}, {}, {}}, -1.0, 1.0});
  spec.variable_bounds.push_back({{VariableSelector::Kind::Rate, "children", "", {}, {}, {}}, -2000.0, 0.0});
  const auto compiled = compile(code, pop, spec);
  const auto current = compiled.layout->current_values();
  const auto audit = lp::audit_feasibility(compiled.problem, current, 1e-9);
  CHECK(audit.ok());
  CHECK(compiled.revenue_loss(current) == doctest::Approx(0.0).scale(1e6));
}

TEST_CASE("rate caps tighten every bound") {
  const auto code = example1_code();
  const auto pop = testing::example1_population(code);
  ReformSpec spec;
  spec.constraints.push_back({"cap", RateBound{{}, {}, 0.6}});
  const auto compiled = compile(code, pop, spec);
  for (const auto& c : compiled.problem.columns()) CHECK(c.upper == 0.6);

  spec.constraints.push_back({"floor", RateBound{{}, 0.7, {}}});
  CHECK_THROWS_AS(compile(code, pop, spec), CompileError);
}

TEST_CASE("mirror of identical taxpayers is a tautology") {
  const auto code = example1_code();
  std::vector<io::Taxpayer> tp{{"a", {{"income_before_tax", 40000.0}}, {}, 1.0, "", 0.0},
                               {"b", {{"income_before_tax", 40000.0}}, {}, 1.0, "", 0.0}};
  const auto pop = testing::taxed(code, tp);
  ReformSpec spec = tight_spec();
  spec.constraints.push_back({"mirror", Mirror{"a", "b", 0.0, Direction::AtMost}});
  const auto compiled = compile(code, pop, spec);
  CHECK(compiled.problem.row_count() == 2);
  CHECK(lp::solve(compiled.problem).status == lp::Status::Optimal);
}

TEST_CASE("freezing every rule leaves a constant problem") {
  const auto code = example2_code();
  const auto pop = testing::example2_population(code);
  ReformSpec spec = tight_spec();
  for (const auto& r : code.rules()) spec = freeze_rule(spec, r.id);
  auto compiled = compile(code, pop, spec);
  CHECK(compiled.problem.column_count() == 0);
  CHECK(compiled.problem.row_count() == 0);
  CHECK(lp::solve(compiled.problem).status == lp::Status::Optimal);

  // Frozen at other values, the tight rows cannot hold.
  auto params = code.rule("child_benefit").params;
  for (auto& [cell, p] : params) std::fill(p.rates.begin(), p.rates.end(), -700.0);
  spec = freeze_rule(spec, "child_benefit", params);
  compiled = compile(code, pop, spec);
  CHECK(compiled.problem.row_count() > 0);
  CHECK(lp::solve(compiled.problem).status == lp::Status::Infeasible);
}

TEST_CASE("freezing nothing leaves the problem unchanged") {
  const auto code = example1_code();
  const auto pop = testing::example1_population(code);
  CHECK(compile(code, pop, tight_spec()).problem == compile(code, pop, tight_spec()).problem);
  CHECK(lp::export_mps(compile(code, pop, tight_spec()).problem) ==
        lp::export_mps(compile(code, pop, tight_spec()).problem));
}

TEST_CASE("compile errors") {
  const auto code = example1_code();
  const auto pop = testing::example1_population(code);
  ReformSpec spec;
  spec.constraints.push_back({"nobody", IncomeRelative{income_range(1e9, {}), 0.05}});
  CHECK_THROWS_AS(compile(code, pop, spec), CompileError);

  ReformSpec staged;
  staged.objective.kind = ObjectiveKind::Lexicographic;
  CHECK_THROWS_AS(compile(code, pop, staged), StagedSolveError);
  CHECK_NOTHROW(compile(code, pop, first_stage(staged)));
  CHECK_NOTHROW(compile(code, pop, staged, CompileContext{0.0}));

  ReformSpec unknown = freeze_rule(ReformSpec{}, "no_such_rule");
  CHECK_THROWS_AS(compile(code, pop, unknown), CompileError);

  ReformSpec bad_eps;
  bad_eps.constraints.push_back({"eps", IncomeRelative{{}, -1.0}});
  CHECK_THROWS_AS(compile(code, pop, bad_eps), CompileError);
}

TEST_CASE("household guarantees sum their members") {
  const auto code = example3_code();
  const auto pop = testing::example3_population(code, 5, 3, 9);
  ReformSpec spec;
  Selector households;
  households.level = Selector::Level::Household;
  spec.constraints.push_back({"hh", IncomeRelative{households, -0.1}});
  const auto compiled = compile(code, pop, spec);
  CHECK(compiled.problem.row_count() == 8);
  // Row activity at the current rates is the household's current tax.
  const auto current = compiled.layout->current_values();
  for (int r = 0; r < compiled.problem.row_count(); ++r) {
    const auto& origin = compiled.origins[static_cast<std::size_t>(r)];
    double y = 0, c = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
      const auto& t = pop.taxpayers()[i];
      const std::string unit = t.household_id.empty() ? t.id : "hh:" + t.household_id;
      if (unit != origin.unit) continue;
      y += t.current_tax;
      c += compiled.rows[i].constant;
    }
    CHECK(compiled.problem.activity(r, current) + c == doctest::Approx(y).scale(1.0));
  }
}

TEST_CASE("big-M indicators switch variables off exactly") {
  const auto code = example1_code();
  const auto pop = testing::example1_population(code);
  ReformSpec spec;
  spec.objective.kind = ObjectiveKind::MinComplexity;
  Selector all;
  // Taxes may not rise, and net income may rise by at most 5%.
  spec.constraints.push_back({"no_rise", IncomeRelative{all, 0.0, Direction::AtMost, IncomeRelative::Form::Tax}});
  spec.constraints.push_back({"band", IncomeRelative{all, 0.05, Direction::AtMost}});
  const auto compiled = compile(code, pop, spec);
  CHECK(compiled.problem.has_binaries());
  const auto sol = lp::solve(compiled.problem);
  REQUIRE(sol.status == lp::Status::Optimal);
  const auto v = compiled.values(sol);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (sol.x[static_cast<std::size_t>(compiled.indicators[j])] < 0.5) CHECK(v[j] == 0.0);
  }
  CHECK(audit_reform(compiled, pop, spec, v).empty());
}

TEST_CASE("rate monotonicity and marginal caps") {
  const auto code = example3_code();
  const auto pop = testing::example3_population(code, 20, 20, 4);
  ReformSpec spec;
  spec.objective.kind = ObjectiveKind::MinRevenueLoss;
  Selector all;
  spec.constraints.push_back({"guarantee", IncomeRelative{all, -0.1}});
  spec.constraints.push_back({"progressive", RateMonotone{{VariableSelector::Kind::Rate, "income_before_tax", "", {}, {}, {}}, true}});
  spec.constraints.push_back({"cap", MarginalCap{all, 0.55}});
  spec.lump_lower = -5000;
  const auto compiled = compile(code, pop, spec);
  const auto sol = lp::solve(compiled.problem);
  REQUIRE(sol.status == lp::Status::Optimal);
  const auto v = compiled.values(sol);
  CHECK(audit_reform(compiled, pop, spec, v, 1e-6).empty());
  CHECK(lp::audit_feasibility(compiled.problem, sol.x).ok());
  CHECK(sol.objective == doctest::Approx(compiled.revenue_loss(v)).scale(1e3));
}
