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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fiscalopt/error.hpp"
#include "fiscalopt/io/atomic_file.hpp"
#include "fiscalopt/io/synthetic.hpp"
#include "fiscalopt/lp/mps.hpp"
#include "fiscalopt/lp/solver.hpp"
#include "fiscalopt/model/compile.hpp"
#include "fiscalopt/report/documents.hpp"
#include "fiscalopt/scenarios/examples.hpp"
#include "fiscalopt/scenarios/solve.hpp"
#include "support/problems.hpp"

using namespace fiscalopt;
namespace sc = fiscalopt::scenarios;

namespace {

using Clock = std::chrono::steady_clock;

// A reformed code gathers every rate-mode rule on an input into one rule.
const std::string kRates = "rates:income_before_tax";

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects the failed checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++count_;
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + ("failed: " + f);
    if (count_ > failures_.size()) s += "; " + std::to_string(count_ - failures_.size()) + " more failures";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  std::size_t count_ = 0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

tax::RuleParams only_params(const tax::TaxCode& code, const std::string& rule) {
  return code.rule(rule).params.begin()->second;
}

// Tax of a single bracket schedule summed bracket by bracket, written out
// independently of the library.
double schedule_tax(double x, const std::vector<double>& cutoffs, const std::vector<double>& rates) {
  double tax = 0.0;
  double lower = 0.0;
  for (std::size_t b = 0; b < rates.size(); ++b) {
    const double upper = b < cutoffs.size() ? cutoffs[b] : x;
    if (x > lower) tax += rates[b] * (std::min(x, upper) - lower);
    lower = upper;
  }
  return tax;
}

io::Population taxed(const tax::TaxCode& code, std::vector<io::Taxpayer> people) {
  for (auto& t : people) t.current_tax = tax::evaluate_code(code, t.profile());
  return io::Population(std::move(people));
}

tax::TaxRule bracket_rule(std::string id, std::vector<double> cutoffs, std::vector<double> rates) {
  tax::TaxRule r;
  r.id = std::move(id);
  r.input = "income_before_tax";
  r.topic = "income_brackets";
  r.params[{}] = {tax::Support(std::move(cutoffs)), std::move(rates)};
  return r;
}

// 1. Worked examples of bracketize and evaluate, and their cost.
void criterion_1(Check& c) {
  const auto code = sc::example1_code();
  const auto p = only_params(code, "income_tax");
  const std::vector<double> cutoffs(p.support.cutoffs().begin(), p.support.cutoffs().end());
  struct Case {
    const char* name;
    double income;
    std::vector<double> brackets;
  };
  const std::vector<Case> cases{{"Jude", 52000, {25000, 25000, 2000, 0, 0}},
                                {"Laila", 120000, {25000, 25000, 25000, 25000, 20000}}};
  for (const auto& k : cases) {
    c.expect(tax::bracketize(k.income, p.support) == k.brackets, std::string(k.name) + " brackets");
    const double oracle = schedule_tax(k.income, cutoffs, p.rates);
    const double tax = tax::evaluate_code(code, {{"income_before_tax", k.income}}, {});
    c.expect(tax == oracle, std::string(k.name) + " tax " + num(tax) + " vs oracle " + num(oracle));
    c.note(std::string(k.name) + " " + num(tax));
  }
  c.expect(tax::evaluate_code(code, {{"income_before_tax", 52000}}, {}) == 8100.0, "Jude pays 8100");
  c.expect(tax::evaluate_code(code, {{"income_before_tax", 120000}}, {}) == 35000.0, "Laila pays 35000");

  constexpr int reps = 1000;
  double sink = 0.0;
  const auto start = Clock::now();
  for (int i = 0; i < reps; ++i) {
    for (const auto& k : cases) {
      sink += tax::evaluate_code(code, {{"income_before_tax", k.income}}, {});
      sink += tax::bracketize(k.income, p.support)[0];
    }
  }
  const double per_call = seconds_since(start) / reps / 2.0;
  c.expect(sink > 0.0 && per_call < 1e-3, "evaluation took " + num(per_call * 1e3) + " ms");
  c.note("per taxpayer " + num(per_call * 1e6) + " us");
}

// 2. Tight guarantees recover randomly drawn systems.
void criterion_2(Check& c) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> rate(0.0, 0.6);
  std::uniform_real_distribution<double> income(0.0, 200000.0);
  double worst_error = 0.0;
  double worst_time = 0.0;
  for (int system = 0; system < 50; ++system) {
    // Four cutoffs at least 20 000 apart inside [10 000, 190 000].
    std::vector<double> cutoffs;
    std::uniform_real_distribution<double> slot(0.0, 25000.0);
    double at = 10000.0;
    for (int k = 0; k < 4; ++k) {
      at += slot(rng);
      cutoffs.push_back(std::round(at));
      at += 20000.0;
    }
    std::vector<double> rates;
    for (int b = 0; b < 5; ++b) rates.push_back(rate(rng));
    const tax::TaxCode code("random", {}, {bracket_rule("income_tax", cutoffs, rates)});
    std::vector<io::Taxpayer> people;
    for (int i = 0; i < 100; ++i) {
      io::Taxpayer t;
      t.id = "t" + std::to_string(i);
      t.inputs["income_before_tax"] = std::round(income(rng));
      people.push_back(std::move(t));
    }
    const auto population = taxed(code, std::move(people));
    const auto start = Clock::now();
    const auto r = sc::recover(code, population);
    worst_time = std::max(worst_time, seconds_since(start));
    if (!r.outcome.optimal()) {
      c.expect(false, "system " + std::to_string(system) + " not optimal");
      continue;
    }
    c.expect(!r.rank_deficient, "system " + std::to_string(system) + " rank deficient");
    const auto recovered = only_params(r.outcome.reformed_code(), kRates).rates;
    for (std::size_t b = 0; b < rates.size(); ++b) {
      const double e = std::abs(recovered[b] - rates[b]);
      worst_error = std::max(worst_error, e);
      c.expect(e <= 1e-6, "system " + std::to_string(system) + " bracket " + std::to_string(b));
    }
  }
  c.expect(worst_time < 1.0, "slowest instance " + num(worst_time) + " s");
  c.note("max rate error " + num(worst_error) + ", slowest " + num(worst_time * 1e3) + " ms");
}

// 3. Example 1 reform 1, checked on the reformed code itself.
void criterion_3(Check& c) {
  const auto code = sc::example1_code();
  const auto population = sc::example1_population(code);
  const auto start = Clock::now();
  const auto o = sc::solve_reform(code, population, sc::example1_reform1());
  const double elapsed = seconds_since(start);
  c.expect(o.optimal(), std::string("status ") + lp::to_string(o.solution.status));
  if (!o.optimal()) return;
  const auto reformed = o.reformed_code();
  double budget = 0.0;
  double revenue = 0.0;
  for (const auto& t : population.taxpayers()) {
    const double x = t.inputs.at("income_before_tax");
    const double tax = tax::evaluate_code(reformed, t.profile());
    const double old_net = x - t.current_tax;
    const double new_net = x - tax;
    budget += t.weight * (t.current_tax - tax);
    revenue += t.weight * std::abs(t.current_tax);
    if (x < 70000) {
      c.expect(new_net >= 1.05 * old_net - 1e-6 * std::max(1.0, old_net), t.id + " gains under 5%");
    } else {
      c.expect(new_net >= 0.90 * old_net - 1e-6 * std::max(1.0, old_net), t.id + " loses over 10%");
    }
  }
  const double tau = 1e-4 * revenue;
  c.expect(std::abs(budget) <= tau * (1 + 1e-9), "budget delta " + num(budget) + " exceeds " + num(tau));
  const double top = only_params(reformed, kRates).rates.back();
  c.expect(top >= 0.60 - 1e-9 && top <= 0.68 + 1e-9, "top rate " + num(top));
  c.expect(elapsed < 5.0, "took " + num(elapsed) + " s");
  c.note("top rate " + num(top) + ", budget delta " + num(budget) + " (tau " + num(tau) + ")");
}

// 4. Example 1 reform 2 under the cap, and a two-rate version against a
// grid search.
void criterion_4(Check& c) {
  const auto start = Clock::now();
  const auto code = sc::example1_code();
  const auto population = sc::example1_population(code);
  const auto o = sc::solve_reform(code, population, sc::example1_reform2(0.6));
  c.expect(o.optimal(), "reform 2 not optimal");
  if (o.optimal()) {
    double max_rate = 0.0;
    for (double r : only_params(o.reformed_code(), kRates).rates) max_rate = std::max(max_rate, r);
    c.expect(max_rate <= 0.6 + 1e-9, "max rate " + num(max_rate));
    c.note("reform 2 max rate " + num(max_rate));
  }

  // Only the top two rates move; the lower three are pinned at 10, 20
  // and 30%. Everyone above 70 000 keeps at least 90% of net income.
  const auto current = only_params(code, "income_tax");
  model::ReformSpec spec;
  spec.name = "two_rates";
  model::Selector above;
  above.income_min = 70000.0;
  spec.constraints.push_back({"loss_above_70k", model::IncomeRelative{above, -0.10}});
  for (int b = 0; b < 3; ++b) {
    model::RateBound pin;
    pin.variables.kind = model::VariableSelector::Kind::Rate;
    pin.variables.bracket_min = pin.variables.bracket_max = b;
    pin.lower = pin.upper = current.rates[static_cast<std::size_t>(b)];
    spec.constraints.push_back({"pin_" + std::to_string(b), pin});
  }
  model::RateBound cap;
  cap.variables.kind = model::VariableSelector::Kind::Rate;
  cap.upper = 0.6;
  spec.constraints.push_back({"rate_cap", cap});
  spec.objective.kind = model::ObjectiveKind::MinRevenueLoss;
  const auto lp_outcome = sc::solve_reform(code, population, spec);
  c.expect(lp_outcome.optimal(), "two-rate instance not optimal");
  if (!lp_outcome.optimal()) return;
  const auto lp_rates = only_params(lp_outcome.reformed_code(), kRates).rates;
  const double lp_loss = lp_outcome.revenue_loss();

  const std::vector<double> cutoffs(current.support.cutoffs().begin(), current.support.cutoffs().end());
  double best = std::numeric_limits<double>::infinity();
  double best_a = -1.0;
  double best_b = -1.0;
  for (int i = 0; i <= 600; ++i) {
    for (int j = 0; j <= 600; ++j) {
      const double a = i * 0.001;
      const double b = j * 0.001;
      const std::vector<double> rates{current.rates[0], current.rates[1], current.rates[2], a, b};
      double loss = 0.0;
      bool feasible = true;
      for (const auto& t : population.taxpayers()) {
        const double x = t.inputs.at("income_before_tax");
        const double tax = schedule_tax(x, cutoffs, rates);
        if (x >= 70000 && x - tax < 0.9 * (x - t.current_tax) - 1e-9) {
          feasible = false;
          break;
        }
        loss += t.weight * (t.current_tax - tax);
      }
      if (feasible && loss < best) {
        best = loss;
        best_a = a;
        best_b = b;
      }
    }
  }
  c.expect(std::isfinite(best), "grid found no feasible point");
  c.expect(lp_loss <= best + 1e-6 * std::max(1.0, std::abs(best)), "LP worse than the grid");
  c.expect(std::abs(lp_loss - best) <= 1e-4 * std::max(1.0, std::abs(best)),
           "LP loss " + num(lp_loss) + " vs grid " + num(best));
  c.expect(std::abs(lp_rates[3] - best_a) <= 1e-4 && std::abs(lp_rates[4] - best_b) <= 1e-4,
           "LP rates " + num(lp_rates[3]) + ", " + num(lp_rates[4]) + " vs grid " + num(best_a) + ", " +
               num(best_b));
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "took " + num(elapsed) + " s");
  c.note("two-rate LP (" + num(lp_rates[3]) + ", " + num(lp_rates[4]) + ") loss " + num(lp_loss) + ", grid (" +
         num(best_a) + ", " + num(best_b) + ") loss " + num(best));
}

// 5. The complexity objective and a frozen rule.
void criterion_5(Check& c) {
  const auto start = Clock::now();
  const auto code1 = sc::example1_code();
  const auto pop1 = sc::example1_population(code1);
  const auto o = sc::solve_reform(code1, pop1, sc::example1_three_rates());
  c.expect(o.optimal(), std::string("three rates status ") + lp::to_string(o.solution.status));
  if (o.optimal()) {
    int nonzero = 0;
    std::string listed;
    for (double r : only_params(o.reformed_code(), kRates).rates) {
      nonzero += std::abs(r) > 1e-7;
      listed += (listed.empty() ? "" : " ") + num(r);
    }
    c.expect(nonzero <= 3, std::to_string(nonzero) + " non-zero rates");
    c.expect(o.audit.empty(), "three-rate reform breaks a guarantee");
    c.note(std::to_string(nonzero) + " non-zero rates (" + listed + ")");
  }

  const auto code2 = sc::example2_code();
  const auto pop2 = sc::example2_population(code2);
  const auto spec = sc::example2_reform2();
  const auto compiled = model::compile(code2, pop2, spec);
  for (std::size_t i = 0; i < pop2.size(); ++i) {
    const double expected = -800.0 * pop2.taxpayers()[i].inputs.at("children");
    c.expect(compiled.rows[i].constant == expected, pop2.taxpayers()[i].id + " constant");
  }
  const auto o2 = sc::solve_reform(code2, pop2, spec);
  c.expect(o2.optimal(), "example 2 reform 2 not optimal");
  if (o2.optimal()) {
    const auto rates = only_params(o2.reformed_code(), "child_benefit").rates;
    c.expect(std::all_of(rates.begin(), rates.end(), [](double r) { return r == -800.0; }),
             "child benefit moved");
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 30.0, "took " + num(elapsed) + " s");
}

// 6. A contradiction, its conflict set, and feasibility without it.
void criterion_6(Check& c) {
  const auto start = Clock::now();
  const auto code = sc::example1_code();
  const auto population = sc::example1_population(code);
  const auto o = sc::solve_reform(code, population, sc::universal_cut_with_revenue_gain());
  c.expect(o.solution.status == lp::Status::Infeasible, std::string("status ") + lp::to_string(o.solution.status));
  c.expect(!o.solution.conflict.empty(), "empty conflict set");
  if (o.solution.conflict.empty()) return;
  const auto relaxed = o.compiled->problem.without_rows(o.solution.conflict);
  const auto again = lp::solve(relaxed);
  c.expect(again.status != lp::Status::Infeasible, "still infeasible without the conflict set");
  std::string names;
  for (const auto& n : o.conflict_constraints()) names += (names.empty() ? "" : ", ") + n;
  c.note(std::to_string(o.solution.conflict.size()) + " rows from " + names + "; without them " +
         lp::to_string(again.status));
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "took " + num(elapsed) + " s");
}

// 7. The 21-rule code on 13 500 synthetic taxpayers.
void criterion_7(Check& c) {
  const auto start = Clock::now();
  const auto code = sc::example4_code();
  const auto population = io::generate_population(sc::example4_config(), &code);
  double sum = 0.0;
  for (const auto& t : population.taxpayers()) sum += t.inputs.at("income_before_tax");
  const double mean = sum / static_cast<double>(population.size());
  c.expect(population.size() == 13500, "N = " + std::to_string(population.size()));
  c.expect(std::abs(mean / 33194.0 - 1.0) <= 0.02, "mean income " + num(mean));

  const auto spec = sc::example4_reform(0.75);
  const auto t = sc::two_step_reform(code, population, spec, spec.objective.slack);
  c.expect(t.first.optimal() && t.second.optimal(), "two-step did not finish optimal");
  c.expect(t.first.audit.empty() && t.second.audit.empty(), "two-step breaks a guarantee");
  c.expect(t.after_second.active < t.before.active,
           "active rules " + std::to_string(t.after_second.active) + " vs " + std::to_string(t.before.active));
  c.note("N " + std::to_string(population.size()) + ", mean " + num(mean) + ", rules " +
         std::to_string(t.before.active) + " (" + std::to_string(t.before.income_dependent) + ") -> " +
         std::to_string(t.after_second.active) + " (" + std::to_string(t.after_second.income_dependent) + ")");

  const auto f = sc::sweep_frontier(code, population, spec, {0.65, 0.70, 0.75, 0.80});
  std::string losses;
  for (const auto& row : f.rows) {
    losses += (losses.empty() ? "" : ", ") + num(row.cap) + ":" + (row.status == "optimal" ? num(row.loss) : row.status);
  }
  c.expect(f.monotone, "frontier rises: " + losses);
  c.note("frontier " + losses);
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 120.0, "took " + num(elapsed) + " s");
  c.note(num(elapsed) + " s");
}

// 8. The sum of two piecewise-linear rules is linear between the merged
// cutoffs.
void criterion_8(Check& c) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_cutoffs = [&] {
    std::vector<double> cuts;
    const int n = static_cast<int>(unit(rng) * 6);
    for (int k = 0; k < n; ++k) cuts.push_back(std::round(1000 + unit(rng) * 199000));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
  };
  int segments = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    std::vector<tax::TaxRule> rules;
    for (int k = 0; k < 2; ++k) {
      const auto cuts = random_cutoffs();
      std::vector<double> rates;
      for (std::size_t b = 0; b <= cuts.size(); ++b) rates.push_back(unit(rng) - 0.3);
      tax::TaxRule r = bracket_rule("r" + std::to_string(k), cuts, rates);
      if (unit(rng) < 0.5) {
        r.kind = tax::RuleKind::Benefit;
        r.params.begin()->second.lump_sum = -std::round(unit(rng) * 3000);
      }
      rules.push_back(std::move(r));
    }
    const tax::TaxCode code("pair", {}, rules);
    std::vector<const tax::TaxRule*> ptrs;
    for (const auto& r : code.rules()) ptrs.push_back(&r);
    const auto merged = tax::merge_supports(code, ptrs, {}, "income_before_tax");
    auto f = [&](double x) { return tax::evaluate_code(code, {{"income_before_tax", x}}, {}); };
    for (std::size_t b = 0; b < merged.bracket_count(); ++b) {
      const double lo = merged.lower(b);
      const double hi = b + 1 < merged.bracket_count() ? merged.upper(b) : lo + 100000.0;
      const double width = hi - lo;
      // Slopes over the left, middle and right thirds of the segment agree.
      std::vector<double> slopes;
      for (int k = 0; k < 3; ++k) {
        const double a = lo + width * k / 3.0;
        const double z = lo + width * (k + 1) / 3.0;
        slopes.push_back((f(z) - f(a)) / (z - a));
      }
      const double scale = std::max(1.0, std::abs(slopes[1]));
      c.expect(std::abs(slopes[0] - slopes[1]) <= 1e-9 * scale && std::abs(slopes[2] - slopes[1]) <= 1e-9 * scale,
               "pair " + std::to_string(pair) + " segment " + std::to_string(b));
      ++segments;
    }
  }
  c.note("1000 pairs, " + std::to_string(segments) + " segments");
}

// 9. Marginal pressure against finite differences on the 21-rule code.
void criterion_9(Check& c) {
  const auto code = sc::example4_code();
  auto config = sc::example4_config();
  config.taxpayers = 1500;
  config.households = 1000;
  const auto population = io::generate_population(config, &code);
  const std::string wrt = "income_before_tax";
  const auto moving = code.comoving_inputs(wrt);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> income(0.0, 150000.0);
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  std::vector<const tax::TaxRule*> rules;
  for (const auto& r : code.rules()) rules.push_back(&r);
  constexpr double h = 0.01;
  int probes = 0;
  int skipped = 0;
  double worst = 0.0;
  while (probes < 10000) {
    const auto& t = population.taxpayers()[pick(rng)];
    tax::TaxpayerProfile p = t.profile();
    const double delta = std::round(income(rng)) + 0.5 - p.inputs[wrt];
    for (const auto& in : moving) {
      if (p.inputs.count(in)) p.inputs[in] = std::max(0.0, p.inputs[in] + delta);
    }
    const auto group = code.assign(p.characteristics);
    // Skip probes within 1 of a breakpoint of any moving input.
    bool near = false;
    for (const auto& in : moving) {
      if (!p.inputs.count(in)) continue;
      const auto merged = tax::merge_supports(code, rules, group, in);
      for (double cut : merged.cutoffs()) near = near || std::abs(cut - p.inputs[in]) < 1.0;
      near = near || p.inputs[in] < 1.0;
    }
    if (near) {
      ++skipped;
      continue;
    }
    auto q = p;
    for (const auto& in : moving) {
      if (q.inputs.count(in)) q.inputs[in] += h;
    }
    const double fd = (tax::evaluate_code(code, q) - tax::evaluate_code(code, p)) / h;
    const double mp = tax::marginal_pressure(code, p, wrt);
    worst = std::max(worst, std::abs(fd - mp));
    c.expect(std::abs(fd - mp) <= 1e-6, t.id + " at " + num(p.inputs[wrt]) + ": " + num(mp) + " vs " + num(fd));
    ++probes;
  }
  c.note(std::to_string(probes) + " probes, " + std::to_string(skipped) + " near a cutoff skipped, max error " +
         num(worst));
}

// 10. MPS export and import on every fixture problem, and the golden file.
void criterion_10(Check& c) {
  std::map<std::string, std::string> files;
  for (auto& [path, content] : sc::scenario_fixtures()) files.emplace(path, content);
  int problems = 0;
  for (const auto& s : sc::bundled_scenarios()) {
    const auto code = report::parse_code(files.at(s.code));
    const auto population = s.population.empty()
                                ? io::generate_population(io::parse_synthetic_config(files.at(s.generator)), &code)
                                : io::parse_population(files.at(s.population));
    const auto spec = report::parse_spec(files.at(s.spec));
    std::vector<lp::LinearProblem> ps;
    if (spec.objective.kind == model::ObjectiveKind::Lexicographic) {
      ps.push_back(model::compile(code, population, model::first_stage(spec)).problem);
      model::CompileContext context;
      context.first_stage_optimum = 12345.678;
      ps.push_back(model::compile(code, population, spec, context).problem);
    } else {
      ps.push_back(model::compile(code, population, spec).problem);
    }
    for (const auto& p : ps) {
      c.expect(lp::import_mps(lp::export_mps(p)) == p, s.id + " round trip");
      ++problems;
    }
  }
  const std::string golden = io::read_file(std::string(FISCALOPT_GOLDEN_DIR) + "/tiny.mps");
  c.expect(lp::export_mps(testing::tiny_problem()) == golden, "tiny export differs from the golden file");
  c.expect(lp::import_mps(golden) == testing::tiny_problem(), "golden file imports differently");
  c.note(std::to_string(problems) + " fixture problems");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria{
      {"bracketize and evaluate the worked examples", criterion_1},
      {"recovery of 50 random systems", criterion_2},
      {"example 1 reform 1 guarantees and budget", criterion_3},
      {"rate cap and two-rate grid oracle", criterion_4},
      {"complexity objective and frozen child benefit", criterion_5},
      {"conflict set removal restores feasibility", criterion_6},
      {"scale run, rule count and frontier", criterion_7},
      {"piecewise-linear closure of rule pairs", criterion_8},
      {"marginal pressure against finite differences", criterion_9},
      {"MPS round trip and golden file", criterion_10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = Clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    std::printf("%s %2zu %s (%.2f s): %s\n", check.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first, elapsed,
                check.summary().c_str());
    std::fflush(stdout);
    failed += !check.ok();
  }
  return failed == 0 ? 0 : 1;
}
