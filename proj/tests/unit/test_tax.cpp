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
#include <numeric>
#include <random>

#include "fiscalopt/error.hpp"
#include "fiscalopt/tax/code.hpp"
#include "support/codes.hpp"

using namespace fiscalopt;
using namespace fiscalopt::tax;
using fiscalopt::testing::bracket_rule;
using fiscalopt::testing::benefit_rule;

namespace {

const Support kExample1Support({25000, 50000, 75000, 100000});

// Slab-by-slab sum, written independently of bracketize.
double slab_tax(double x, const std::vector<double>& cutoffs, const std::vector<double>& rates) {
  double tax = 0.0;
  double lo = 0.0;
  for (std::size_t b = 0; b <= cutoffs.size(); ++b) {
    const double hi = b < cutoffs.size() ? cutoffs[b] : 1e300;
    if (x > lo) tax += rates[b] * (std::min(x, hi) - lo);
    lo = hi;
  }
  return tax;
}

std::vector<double> random_cutoffs(std::mt19937_64& rng, int max_count, double span) {
  std::uniform_int_distribution<int> count(0, max_count);
  std::uniform_real_distribution<double> pos(1.0, span);
  std::vector<double> c(count(rng));
  for (auto& v : c) v = std::round(pos(rng));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

std::vector<double> random_rates(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> r(-0.5, 0.8);
  std::vector<double> v(n);
  for (auto& x : v) x = r(rng);
  return v;
}

}  // namespace

TEST_CASE("bracketize splits the worked examples") {
  CHECK(bracketize(52000, kExample1Support) == std::vector<double>{25000, 25000, 2000, 0, 0});
  CHECK(bracketize(120000, kExample1Support) ==
        std::vector<double>{25000, 25000, 25000, 25000, 20000});
  CHECK(bracketize(0, kExample1Support) == std::vector<double>(5, 0.0));
  CHECK(bracketize(7, Support{}) == std::vector<double>{7});
}

TEST_CASE("bracketize rejects negative and non-finite input") {
  CHECK_THROWS_AS(bracketize(-1, kExample1Support), DomainError);
  CHECK_THROWS_AS(bracketize(std::nan(""), kExample1Support), DomainError);
  CHECK_THROWS_AS(bracketize(INFINITY, kExample1Support), DomainError);
}

TEST_CASE("support validation") {
  CHECK_THROWS_AS(Support({10, 5}), DomainError);
  CHECK_THROWS_AS(Support({0, 5}), DomainError);
  CHECK_THROWS_AS(Support({5, 5}), DomainError);
  CHECK_THROWS_AS(Support({5, INFINITY}), DomainError);
  CHECK(Support({1, 2}).bracket_count() == 3);
}

TEST_CASE("active bracket takes the lower bracket at a cutoff") {
  CHECK(kExample1Support.active_bracket(0) == 0);
  CHECK(kExample1Support.active_bracket(25000) == 0);
  CHECK(kExample1Support.active_bracket(25000.5) == 1);
  CHECK(kExample1Support.active_bracket(1e9) == 4);
}

TEST_CASE("bracketize partitions its input") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(0.0, 300000.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Support s(random_cutoffs(rng, 8, 200000));
    const double x = trial % 10 == 0 ? 0.0 : xs(rng);
    const auto parts = bracketize(x, s);
    REQUIRE(parts.size() == s.bracket_count());
    CHECK(std::accumulate(parts.begin(), parts.end(), 0.0) == doctest::Approx(x).epsilon(1e-12));
    for (std::size_t b = 0; b < parts.size(); ++b) {
      CHECK(parts[b] >= 0.0);
      CHECK(parts[b] <= s.upper(b) - s.lower(b));
    }
  }
}

TEST_CASE("evaluate example 1 code") {
  const TaxCode code = fiscalopt::testing::example1_code();
  CHECK(evaluate_code(code, {{"income_before_tax", 52000}}, {}) == 8100);
  CHECK(evaluate_code(code, {{"income_before_tax", 120000}}, {}) ==
        2500 + 5000 + 7500 + 10000 + 10000);
  CHECK(evaluate_code(code, {{"income_before_tax", 100000}}, {}) == 25000);
  CHECK(marginal_pressure(code, {{"income_before_tax", 52000}}, {}, "income_before_tax") ==
        doctest::Approx(0.30));
  CHECK(marginal_pressure(code, {{"income_before_tax", 5e6}}, {}, "income_before_tax") == 0.5);
  CHECK_THROWS_AS(evaluate_code(code, {{"income", 1}}, {}), ValidationError);
}

TEST_CASE("evaluate example 2 code") {
  const TaxCode code = fiscalopt::testing::example2_code();
  const auto& healthcare = code.rule("healthcare");
  CHECK(evaluate_rule(code, healthcare, fiscalopt::testing::example2_inputs(35000, 0), {}) ==
        doctest::Approx(-1500 + 0.15 * 5000));
  CHECK(evaluate_code(code, fiscalopt::testing::example2_inputs(20000, 2), {}) ==
        doctest::Approx(2000 - 1500 - 1600));
  CHECK(evaluate_rule(code, code.rule("child_benefit"),
                      fiscalopt::testing::example2_inputs(20000, 0), {}) == 0.0);
  CHECK(marginal_pressure(code, fiscalopt::testing::example2_inputs(35000, 1), {},
                          "income_before_tax") == doctest::Approx(0.35));
}

TEST_CASE("merge supports") {
  const TaxCode code = fiscalopt::testing::example2_code();
  std::vector<const TaxRule*> rules{&code.rule("income_tax"), &code.rule("healthcare")};
  // The healthcare rule reads household income; look at it as a rule on that input.
  TaxRule hc = code.rule("healthcare");
  hc.input = "income_before_tax";
  rules[1] = &hc;
  CHECK(merge_supports(code, rules, {}, "income_before_tax") ==
        Support({25000, 30000, 40000, 50000, 75000, 100000}));
  std::vector<const TaxRule*> single{&code.rule("income_tax")};
  CHECK(merge_supports(code, single, {}, "income_before_tax") == kExample1Support);
  std::vector<const TaxRule*> twice{&code.rule("income_tax"), &code.rule("income_tax")};
  CHECK(merge_supports(code, twice, {}, "income_before_tax") == kExample1Support);
}

TEST_CASE("assign groups") {
  std::vector<GroupDimension> dims{
      {"employment", "employment", {{"self_employed", "self_employed"}, {"labor", "labor"}}},
      {"partner", "partner", {{"yes", "fiscal_partner"}, {"no", "single"}}}};
  CHECK(assign_group({{"employment", "self_employed"}, {"partner", "yes"}}, dims) ==
        GroupKey{"self_employed", "fiscal_partner"});
  CHECK(assign_group({{"anything", "x"}}, {}).empty());
  try {
    assign_group({{"employment", "self_employed"}}, dims);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("partner") != std::string::npos);
  }
  CHECK_THROWS_AS(assign_group({{"employment", "both"}, {"partner", "no"}}, dims),
                  ValidationError);
}

TEST_CASE("rule validation collects every issue") {
  TaxRule bad = bracket_rule("r", "", {10}, {0.1, 0.2, 0.3});
  try {
    TaxCode("bad", {}, {bad, bad});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.issues().size() >= 3);
  }
}

TEST_CASE("input-reducing deductible shifts its input") {
  TaxRule r = bracket_rule("allowance", "income_before_tax", {10000}, {0.1, 0.3});
  r.kind = RuleKind::InputReducingDeductible;
  r.params[{}].deduction = 5000;
  const TaxCode code("d", {}, {r});
  for (double x : {0.0, 3000.0, 5000.0, 12000.0, 40000.0}) {
    CHECK(evaluate_code(code, {{"income_before_tax", x}}, {}) ==
          doctest::Approx(slab_tax(std::max(x - 5000, 0.0), {10000}, {0.1, 0.3})));
  }
}

TEST_CASE("tax-crediting deductible cancels pressure up to D") {
  TaxRule credit;
  credit.id = "credit";
  credit.kind = RuleKind::TaxCreditingDeductible;
  credit.input = "income_before_tax";
  credit.credited_rule = "income_tax";
  credit.params[{}].deduction = 30000;
  std::vector<TaxRule> rules{bracket_rule("income_tax", "income_before_tax",
                                          {25000, 50000, 75000, 100000},
                                          {0.1, 0.2, 0.3, 0.4, 0.5}),
                             credit};
  const TaxCode code("c", {}, rules);
  CHECK(code.rule("credit").kind == RuleKind::Bracket);
  for (double x : {0.0, 10000.0, 25000.0, 30000.0, 52000.0, 120000.0}) {
    const double full = slab_tax(x, {25000, 50000, 75000, 100000}, {0.1, 0.2, 0.3, 0.4, 0.5});
    const double credited =
        slab_tax(std::min(x, 30000.0), {25000, 50000, 75000, 100000}, {0.1, 0.2, 0.3, 0.4, 0.5});
    CHECK(evaluate_code(code, {{"income_before_tax", x}}, {}) ==
          doctest::Approx(full - credited));
  }
}

TEST_CASE("group-dependent parameters and eligibility") {
  std::vector<GroupDimension> dims{{"partner", "partner", {{"yes", "couple"}, {"no", "single"}}}};
  TaxRule hc;
  hc.id = "healthcare";
  hc.kind = RuleKind::Benefit;
  hc.input = "household_income";
  hc.group_by = {"partner"};
  hc.params[{"single"}] = RuleParams{Support({30000, 40000}), {0, 0.15, 0}, -1500};
  hc.params[{"couple"}] = RuleParams{Support({30000, 60000}), {0, 0.075, 0}, -2250};
  TaxRule se = bracket_rule("bonus", "income_before_tax", {}, {-0.01});
  se.eligibility["partner"] = {"single"};
  const TaxCode code("g", dims, {hc, se});
  const InputVector in{{"income_before_tax", 20000}, {"household_income", 40000}};
  CHECK(evaluate_code(code, in, {"couple"}) == doctest::Approx(-2250 + 0.075 * 10000));
  CHECK(evaluate_code(code, in, {"single"}) == doctest::Approx(0.0 - 200));
  // Household income co-moves with personal income.
  CHECK(marginal_pressure(code, in, {"couple"}, "income_before_tax") ==
        doctest::Approx(0.075));
  CHECK(marginal_pressure(code, in, {"single"}, "income_before_tax") ==
        doctest::Approx(0.15 - 0.01));
  CHECK(marginal_pressure(code, in, {"single"}, "household_income") == doctest::Approx(0.15));
  // Identical inputs in the same group give identical pressures.
  CHECK(evaluate_code(code, TaxpayerProfile{in, {{"partner", "yes"}}}) ==
        evaluate_code(code, TaxpayerProfile{in, {{"partner", "yes"}}}));
}

TEST_CASE("missing eligible parameters are rejected") {
  std::vector<GroupDimension> dims{{"partner", "partner", {{"yes", "couple"}, {"no", "single"}}}};
  TaxRule r = bracket_rule("r", "income_before_tax", {}, {0.1});
  r.group_by = {"partner"};
  r.params.clear();
  r.params[{"single"}] = RuleParams{Support{}, {0.1}};
  CHECK_THROWS_AS(TaxCode("x", dims, {r}), ValidationError);
  r.eligibility["partner"] = {"single"};
  CHECK_NOTHROW(TaxCode("x", dims, {r}));
}

TEST_CASE("additivity over random rule stacks") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> xs(0.0, 250000.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TaxRule> rules;
    const int n = 1 + trial % 5;
    for (int k = 0; k < n; ++k) {
      auto c = random_cutoffs(rng, 6, 200000);
      auto r = random_rates(rng, c.size() + 1);
      if (k % 2) {
        rules.push_back(benefit_rule("b" + std::to_string(k), "income_before_tax",
                                     -std::abs(r[0]) * 1000, c, r));
      } else {
        rules.push_back(bracket_rule("r" + std::to_string(k), "income_before_tax", c, r));
      }
    }
    const TaxCode code("stack", {}, rules);
    for (int p = 0; p < 10; ++p) {
      const InputVector in{{"income_before_tax", xs(rng)}};
      double sum = 0.0;
      for (const auto& r : code.rules()) sum += evaluate_rule(code, r, in, {});
      CHECK(evaluate_code(code, in, {}) == sum);
    }
  }
}
