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

#include <algorithm>
#include <cmath>
#include <string>

#include "fiscalopt/error.hpp"
#include "fiscalopt/report/report.hpp"
#include "fiscalopt/scenarios/examples.hpp"
#include "fiscalopt/scenarios/solve.hpp"

using namespace fiscalopt;

namespace {

struct Fixture {
  tax::TaxCode code = scenarios::example1_code();
  io::Population population = scenarios::example1_population(code);
};

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("recovery report keeps every rate and revenue") {
  Fixture f;
  const auto rec = scenarios::recover(f.code, f.population);
  REQUIRE(rec.outcome.optimal());
  const auto r = report::build_report(*rec.outcome.compiled, f.population, rec.outcome.spec, rec.outcome.solution);
  CHECK(r.status == "optimal");
  CHECK(r.taxpayer_count == 100);
  CHECK_FALSE(r.truncated);
  CHECK(r.audit.empty());
  int rates = 0;
  for (const auto& line : r.rates) {
    CHECK(line.reformed == doctest::Approx(line.current).epsilon(1e-7));
    rates += line.kind == "rate";
  }
  CHECK(rates == 5);
  CHECK(std::abs(r.revenue_loss) <= 1e-4 * r.revenue_before);
  CHECK(r.revenue_after == doctest::Approx(r.revenue_before).epsilon(1e-9));
  for (const auto& t : r.taxpayers) CHECK(t.new_tax == doctest::Approx(t.old_tax).epsilon(1e-7));
}

TEST_CASE("report revenue loss matches the compiled objective") {
  Fixture f;
  const auto out = scenarios::solve_reform(f.code, f.population, scenarios::example1_reform2());
  REQUIRE(out.optimal());
  const auto r = report::build_report(*out.compiled, f.population, out.spec, out.solution);
  CHECK(r.revenue_loss == doctest::Approx(out.compiled->revenue_loss(out.values)).epsilon(1e-9));
  CHECK(r.revenue_before - r.revenue_after == doctest::Approx(r.revenue_loss).epsilon(1e-9));
  const auto j = report::report_to_json(r);
  CHECK(j.at("status") == "optimal");
  CHECK(j.at("rates").size() == r.rates.size());
}

TEST_CASE("reports refuse non optimal solutions") {
  Fixture f;
  const auto spec = scenarios::universal_cut_with_revenue_gain();
  const auto out = scenarios::solve_reform(f.code, f.population, spec);
  REQUIRE_FALSE(out.optimal());
  CHECK_THROWS_AS(report::build_report(*out.compiled, f.population, out.spec, out.solution), Error);
}

TEST_CASE("large populations are sampled at a stride") {
  Fixture f;
  const auto rec = scenarios::recover(f.code, f.population);
  REQUIRE(rec.outcome.optimal());
  report::ReportOptions options;
  options.max_records = 30;
  const auto r = report::build_report(*rec.outcome.compiled, f.population, rec.outcome.spec,
                                      rec.outcome.solution, options);
  CHECK(r.truncated);
  CHECK(r.taxpayer_count == 100);
  CHECK(r.taxpayers.size() <= 30);
  CHECK(r.taxpayers.size() >= 25);
  // Revenue still covers everyone.
  const auto full = report::build_report(*rec.outcome.compiled, f.population, rec.outcome.spec,
                                         rec.outcome.solution);
  CHECK(r.revenue_before == full.revenue_before);
  options.max_records = 0;
  CHECK(report::build_report(*rec.outcome.compiled, f.population, rec.outcome.spec, rec.outcome.solution, options)
            .taxpayers.empty());
}

TEST_CASE("csv outputs carry headers and one line per record") {
  Fixture f;
  const auto rec = scenarios::recover(f.code, f.population);
  const auto r = report::build_report(*rec.outcome.compiled, f.population, rec.outcome.spec, rec.outcome.solution);
  const auto taxpayers = report::taxpayers_csv(r);
  const auto rates = report::rates_csv(r);
  CHECK(first_line(taxpayers) ==
        "id,weight,income,old_tax,new_tax,old_net_income,new_net_income,old_marginal,new_marginal");
  CHECK(first_line(rates) == "name,kind,input,rule,cell,bracket_lower,bracket_upper,current,reformed");
  CHECK(std::count(taxpayers.begin(), taxpayers.end(), '\n') == 101);
  CHECK(std::count(rates.begin(), rates.end(), '\n') == static_cast<long>(r.rates.size()) + 1);
}

TEST_CASE("census table marks excluded topics") {
  model::Census census;
  census.topics.push_back({"income_brackets", 1, 1, false});
  census.topics.push_back({"mortgage", 0, 0, true});
  census.active = 1;
  census.income_dependent = 1;
  const auto table = report::census_table(census);
  CHECK(table.find("Topic") != std::string::npos);
  CHECK(table.find("Inc. dep.") != std::string::npos);
  const auto at = table.find("mortgage");
  REQUIRE(at != std::string::npos);
  const auto line = table.substr(at, table.find('\n', at) - at);
  CHECK(line.find('-') != std::string::npos);
  const auto j = report::census_to_json(census);
  CHECK(j.at("active") == 1);
}

TEST_CASE("population summary counts and checks current taxes") {
  Fixture f;
  const auto s = report::population_summary(f.population, &f.code);
  CHECK(s.at("taxpayers") == 100);
  CHECK(s.at("current_tax_check").at("mismatches") == 0);
  CHECK(s.at("inputs").at("income_before_tax").at("count") == 100);
  auto taxpayers = f.population.taxpayers();
  taxpayers[3].current_tax += 50.0;
  const io::Population off(taxpayers, f.population.metadata());
  const auto t = report::population_summary(off, &f.code);
  CHECK(t.at("current_tax_check").at("mismatches") == 1);
  CHECK(t.at("current_tax_check").at("max_abs_deviation").get<double>() == doctest::Approx(50.0));
  CHECK(t.at("current_tax_check").at("worst_taxpayer") == taxpayers[3].id);
}
