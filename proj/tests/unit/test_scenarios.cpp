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
#include <filesystem>
#include <limits>
#include <string>

#include "fiscalopt/error.hpp"
#include "fiscalopt/io/atomic_file.hpp"
#include "fiscalopt/scenarios/examples.hpp"
#include "fiscalopt/scenarios/solve.hpp"

using namespace fiscalopt;

namespace {

const std::string kRates = "rates:income_before_tax";

struct Example1 {
  tax::TaxCode code = scenarios::example1_code();
  io::Population population = scenarios::example1_population(code);
};

}  // namespace

TEST_CASE("fixture directory matches the compiled scenarios") {
  const std::filesystem::path dir = FISCALOPT_SCENARIO_DIR;
  for (const auto& [path, content] : scenarios::scenario_fixtures()) {
    CAPTURE(path);
    CHECK(io::read_file(dir / path) == content);
  }
}

TEST_CASE("recovery finds the current rates") {
  Example1 f;
  const auto rec = scenarios::recover(f.code, f.population);
  REQUIRE(rec.outcome.optimal());
  CHECK_FALSE(rec.rank_deficient);
  CHECK(rec.rank == rec.variables);
  CHECK(rec.outcome.audit.empty());
  const auto reformed = rec.outcome.reformed_code();
  const auto& rates = reformed.rule(kRates).params.begin()->second.rates;
  const std::vector<double> expected{0.1, 0.2, 0.3, 0.4, 0.5};
  REQUIRE(rates.size() == expected.size());
  for (std::size_t i = 0; i < rates.size(); ++i) CHECK(rates[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("one taxpayer cannot identify five rates") {
  Example1 f;
  std::vector<io::Taxpayer> one{f.population.taxpayers()[10]};
  const io::Population single(one);
  const auto rec = scenarios::recover(f.code, single);
  REQUIRE(rec.outcome.optimal());
  CHECK(rec.rank_deficient);
  CHECK(rec.rank < rec.variables);
  // The tax is still matched.
  const auto reformed = rec.outcome.reformed_code();
  CHECK(tax::evaluate_code(reformed, one[0].profile()) == doctest::Approx(one[0].current_tax).epsilon(1e-7));
}

TEST_CASE("every optimal reform passes its own audit") {
  Example1 f;
  for (const auto& spec : {scenarios::example1_reform1(), scenarios::example1_reform2(),
                           scenarios::example1_three_rates(), scenarios::example1_three_brackets()}) {
    CAPTURE(spec.name);
    const auto out = scenarios::solve_reform(f.code, f.population, spec);
    REQUIRE(out.optimal());
    CHECK(out.audit.empty());
    CHECK(out.conflict.empty());
    CHECK(out.values.size() == out.compiled->layout->variables().size());
  }
}

TEST_CASE("infeasible reforms carry a conflict and no values") {
  Example1 f;
  const auto out = scenarios::solve_reform(f.code, f.population, scenarios::universal_cut_with_revenue_gain());
  CHECK(out.solution.status == lp::Status::Infeasible);
  CHECK(out.values.empty());
  CHECK_FALSE(out.conflict.empty());
  CHECK_FALSE(out.conflict_constraints().empty());
  CHECK_THROWS_AS(out.reformed_code(), Error);
}

TEST_CASE("lexicographic slack trades loss for simplicity") {
  Example1 f;
  auto tight = scenarios::example1_three_rates();
  tight.objective.slack = 0.0;
  auto loose = tight;
  loose.objective.slack = std::numeric_limits<double>::infinity();
  const auto a = scenarios::solve_reform(f.code, f.population, tight);
  const auto b = scenarios::solve_reform(f.code, f.population, loose);
  REQUIRE(a.optimal());
  REQUIRE(b.optimal());
  REQUIRE(a.first_stage_optimum);
  CHECK(a.revenue_loss() == doctest::Approx(*a.first_stage_optimum).epsilon(1e-6).scale(1e3));
  // Without a slack bound the second stage alone decides.
  auto only = tight;
  only.objective.kind = model::ObjectiveKind::MinComplexity;
  const auto c = scenarios::solve_reform(f.code, f.population, only);
  REQUIRE(c.optimal());
  CHECK(c.solution.objective == doctest::Approx(b.solution.objective).epsilon(1e-6));
  CHECK(b.solution.objective <= a.solution.objective + 1e-6);
}

TEST_CASE("two step keeps the first stage loss within slack") {
  Example1 f;
  auto spec = scenarios::example1_reform2();
  const auto t = scenarios::two_step_reform(f.code, f.population, spec, 100000.0);
  REQUIRE(t.first.optimal());
  REQUIRE(t.second.optimal());
  CHECK(t.second.revenue_loss() <= t.first.revenue_loss() + 100000.0 + 1e-3);
  CHECK(t.after_second.active <= t.after_first.active);
  CHECK(t.before.active == 1);
}

TEST_CASE("caps rewrite marginal and rate caps") {
  const auto spec = scenarios::with_cap(scenarios::example1_reform2(), 0.45);
  bool found = false;
  for (const auto& c : spec.constraints) {
    if (const auto* b = std::get_if<model::RateBound>(&c.body)) {
      found = true;
      CHECK(b->upper == 0.45);
    }
  }
  CHECK(found);
  const auto added = scenarios::with_cap(scenarios::example1_reform1(), 0.5);
  CHECK(added.constraints.size() == scenarios::example1_reform1().constraints.size() + 1);
}

TEST_CASE("frontier loss never rises with the cap") {
  Example1 f;
  const std::vector<double> caps{0.4, 0.5, 0.6, 0.8};
  const auto frontier = scenarios::sweep_frontier(f.code, f.population, scenarios::example1_reform2(), caps, {}, 2);
  REQUIRE(frontier.rows.size() == caps.size());
  CHECK(frontier.monotone);
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& row : frontier.rows) {
    CAPTURE(row.cap);
    if (row.status != "optimal") {
      CHECK(std::isnan(row.loss));
      continue;
    }
    CHECK(row.loss <= previous + 1e-3);
    previous = row.loss;
    REQUIRE(row.outcome);
    CHECK(row.outcome->revenue_loss() == doctest::Approx(row.loss));
  }
  CHECK_THROWS_AS(scenarios::sweep_frontier(f.code, f.population, scenarios::example1_reform2(), {0.6, 0.5}),
                  ValidationError);
}
