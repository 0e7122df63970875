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

#include "fiscalopt/model/compile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <variant>

#include "fiscalopt/error.hpp"

namespace fiscalopt::model {

std::string constraint_label(const ConstraintSpec& c, std::size_t index) {
  if (!c.name.empty()) return c.name;
  static constexpr const char* kinds[] = {"income_relative", "income_absolute", "income_tight",
                                          "rate_bound",      "rate_monotone",   "budget",
                                          "mirror",          "marginal_cap"};
  return std::string(kinds[c.body.index()]) + "#" + std::to_string(index);
}

namespace {

constexpr double kSnap = 1e-7;

struct Unit {
  std::string name;
  std::vector<std::size_t> members;
};

double input_of(const io::Taxpayer& t, const std::string& input) {
  auto it = t.inputs.find(input);
  if (it == t.inputs.end()) {
    throw ValidationError("taxpayer '" + t.id + "': missing input '" + input + "'");
  }
  return it->second;
}

/// Rank fraction of each taxpayer's income: the share with strictly lower
/// income.
std::vector<double> income_ranks(const io::Population& population, const std::string& input) {
  const auto& tp = population.taxpayers();
  std::vector<std::size_t> order(tp.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> income(tp.size());
  for (std::size_t i = 0; i < tp.size(); ++i) income[i] = input_of(tp[i], input);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return income[a] < income[b]; });
  std::vector<double> rank(tp.size());
  std::size_t lower = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0 && income[order[k]] != income[order[k - 1]]) lower = k;
    rank[order[k]] = static_cast<double>(lower) / static_cast<double>(tp.size());
  }
  return rank;
}

bool matches(const Selector& s, const io::Population& population, std::size_t i,
             const std::vector<double>& ranks) {
  const io::Taxpayer& t = population.taxpayers()[i];
  if (s.income_min || s.income_max) {
    const double x = input_of(t, s.income_input);
    if (s.income_min && x < *s.income_min) return false;
    if (s.income_max && x >= *s.income_max) return false;
  }
  if (s.quantile_min && ranks[i] < *s.quantile_min) return false;
  if (s.quantile_max && ranks[i] >= *s.quantile_max && *s.quantile_max < 1.0) return false;
  for (const auto& [name, values] : s.characteristics) {
    auto it = t.characteristics.find(name);
    if (it == t.characteristics.end() || !values.count(it->second)) return false;
  }
  if (!s.ids.empty() && std::find(s.ids.begin(), s.ids.end(), t.id) == s.ids.end()) return false;
  return true;
}

/// Units (taxpayers, or households with every member) a selector picks. A
/// household is selected when any member matches.
std::vector<Unit> resolve(const Selector& s, const io::Population& population,
                          const std::string& label) {
  if (s.quantile_min || s.quantile_max) {
    const double lo = s.quantile_min.value_or(0.0);
    const double hi = s.quantile_max.value_or(1.0);
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
      throw CompileError("constraint '" + label + "': quantile range must satisfy 0 <= min < max <= 1");
    }
  }
  std::vector<double> ranks;
  if (s.quantile_min || s.quantile_max) ranks = income_ranks(population, s.income_input);
  std::vector<Unit> out;
  const auto& tp = population.taxpayers();
  if (s.level == Selector::Level::Individual) {
    for (std::size_t i = 0; i < tp.size(); ++i) {
      if (matches(s, population, i, ranks)) out.push_back({tp[i].id, {i}});
    }
  } else {
    for (const auto& unit : population.units()) {
      bool any = false;
      for (std::size_t i : unit) any = any || matches(s, population, i, ranks);
      if (!any) continue;
      const auto& first = tp[unit[0]];
      out.push_back({first.household_id.empty() ? first.id : "hh:" + first.household_id, unit});
    }
  }
  if (out.empty()) throw CompileError("constraint '" + label + "': selector matches no taxpayers");
  return out;
}

struct Aggregate {
  std::vector<lp::Entry> entries;
  double constant = 0.0;
  double income = 0.0;
  double current = 0.0;
};

Aggregate aggregate(const Unit& unit, const std::vector<CoefficientRow>& rows,
                    const io::Population& population, const std::string& income_input) {
  Aggregate a;
  for (std::size_t i : unit.members) {
    const auto& row = rows[i];
    a.entries.insert(a.entries.end(), row.entries.begin(), row.entries.end());
    a.constant += row.constant;
    const auto& t = population.taxpayers()[i];
    a.income += input_of(t, income_input);
    a.current += t.current_tax;
  }
  return a;
}

class Builder {
 public:
  Builder(CompiledProblem& out, double tol) : out_(out), tol_(tol) {}

  /// entries . x (sense) rhs. Rows without entries are kept only when
  /// violated, so an unsatisfiable constant guarantee still makes the
  /// problem infeasible.
  void add(std::string name, std::vector<lp::Entry> entries, lp::RowSense sense, double rhs,
           RowOrigin origin) {
    std::sort(entries.begin(), entries.end(),
              [](const lp::Entry& a, const lp::Entry& b) { return a.column < b.column; });
    std::vector<lp::Entry> merged;
    for (const auto& e : entries) {
      if (!merged.empty() && merged.back().column == e.column) merged.back().value += e.value;
      else merged.push_back(e);
    }
    std::erase_if(merged, [](const lp::Entry& e) { return e.value == 0.0; });
    entries = std::move(merged);
    if (entries.empty()) {
      const double slack = tol_ * std::max(1.0, std::abs(rhs));
      const bool ok = (sense == lp::RowSense::LessEqual && 0.0 <= rhs + slack) ||
                      (sense == lp::RowSense::GreaterEqual && 0.0 >= rhs - slack) ||
                      (sense == lp::RowSense::Equal && std::abs(rhs) <= slack);
      if (ok) return;
    }
    out_.problem.add_row(std::move(name), std::move(entries), sense, rhs);
    out_.origins.push_back(std::move(origin));
  }

 private:
  CompiledProblem& out_;
  double tol_;
};

std::vector<lp::Entry> difference(std::vector<lp::Entry> a, const std::vector<lp::Entry>& b) {
  for (const auto& e : b) a.push_back({e.column, -e.value});
  return a;
}

/// Objective coefficients over all columns plus an offset.
struct Linear {
  std::vector<double> costs;
  double offset = 0.0;
};

Linear objective_terms(ObjectiveKind kind, const ObjectiveSpec& objective,
                       const CompiledProblem& out, int columns) {
  Linear lin{std::vector<double>(static_cast<std::size_t>(columns), 0.0), 0.0};
  const Layout& layout = *out.layout;
  switch (kind) {
    case ObjectiveKind::Feasibility:
      break;
    case ObjectiveKind::MinRevenueLoss:
      for (std::size_t j = 0; j < out.loss_weights.size(); ++j) lin.costs[j] = -out.loss_weights[j];
      lin.offset = out.loss_offset;
      break;
    case ObjectiveKind::MinComplexity:
      for (std::size_t j = 0; j < out.indicators.size(); ++j) {
        const int z = out.indicators[j];
        if (z < 0) continue;
        lin.costs[static_cast<std::size_t>(z)] =
            layout.variables()[j].income_dependent ? objective.income_dependent_weight : 1.0;
      }
      break;
    case ObjectiveKind::MinRates: {
      const auto picked = layout.select(objective.variables);
      if (picked.empty()) throw CompileError("objective selects no variables");
      for (int j : picked) lin.costs[static_cast<std::size_t>(j)] = objective.maximize ? -1.0 : 1.0;
      break;
    }
    case ObjectiveKind::Lexicographic:
      throw CompileError("a lexicographic objective cannot be nested");
  }
  return lin;
}

}  // namespace

ReformSpec first_stage(const ReformSpec& spec) {
  ReformSpec out = spec;
  if (spec.objective.kind == ObjectiveKind::Lexicographic) out.objective.kind = spec.objective.first;
  return out;
}

CompiledProblem compile(const tax::TaxCode& code, const io::Population& population,
                        const ReformSpec& spec, const CompileContext& context) {
  CompiledProblem out;
  out.layout = std::make_shared<const Layout>(code, spec, population);
  const Layout& layout = *out.layout;
  out.rows = build_rows(layout, population);
  out.problem.name = spec.name.empty() ? "reform" : spec.name;

  const int n = static_cast<int>(layout.size());
  std::vector<double> lower(static_cast<std::size_t>(n)), upper(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    lower[static_cast<std::size_t>(j)] = layout.variables()[static_cast<std::size_t>(j)].lower;
    upper[static_cast<std::size_t>(j)] = layout.variables()[static_cast<std::size_t>(j)].upper;
  }

  // Weighted revenue loss.
  out.loss_weights.assign(static_cast<std::size_t>(n), 0.0);
  double weighted_abs = 0.0;
  double weighted_revenue = 0.0;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const auto& row = out.rows[i];
    const auto& t = population.taxpayers()[i];
    out.loss_offset += row.weight * (t.current_tax - row.constant);
    for (const auto& e : row.entries) out.loss_weights[static_cast<std::size_t>(e.column)] += row.weight * e.value;
    weighted_abs += row.weight * std::abs(t.current_tax);
    weighted_revenue += row.weight * t.current_tax;
  }
  out.budget_tolerance = 1e-4 * weighted_abs;

  // Bounds first: they fix the big-M values of the indicators.
  for (std::size_t c = 0; c < spec.constraints.size(); ++c) {
    const auto* bound = std::get_if<RateBound>(&spec.constraints[c].body);
    if (!bound) continue;
    const std::string label = constraint_label(spec.constraints[c], c);
    const auto picked = layout.select(bound->variables);
    if (picked.empty()) throw CompileError("constraint '" + label + "' selects no variables");
    for (int j : picked) {
      auto& lo = lower[static_cast<std::size_t>(j)];
      auto& hi = upper[static_cast<std::size_t>(j)];
      if (bound->lower) lo = std::max(lo, *bound->lower);
      if (bound->upper) hi = std::min(hi, *bound->upper);
      if (lo > hi) {
        throw CompileError("constraint '" + label + "' leaves variable '" +
                           layout.variables()[static_cast<std::size_t>(j)].name +
                           "' with an empty range");
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    out.problem.add_column(layout.variables()[static_cast<std::size_t>(j)].name,
                           lower[static_cast<std::size_t>(j)], upper[static_cast<std::size_t>(j)]);
  }

  const auto& objective = spec.objective;
  const bool lexicographic = objective.kind == ObjectiveKind::Lexicographic;
  if (lexicographic) {
    if (objective.first == ObjectiveKind::Lexicographic || objective.then == ObjectiveKind::Lexicographic) {
      throw CompileError("a lexicographic objective cannot be nested");
    }
    if (!(objective.slack >= 0.0)) throw CompileError("lexicographic slack must be non-negative");
    if (!context.first_stage_optimum) {
      throw StagedSolveError("lexicographic objective needs the optimum of its first stage (" +
                             std::string(to_string(objective.first)) + ")");
    }
  }
  const bool complexity = objective.kind == ObjectiveKind::MinComplexity ||
                          (lexicographic && (objective.first == ObjectiveKind::MinComplexity ||
                                             objective.then == ObjectiveKind::MinComplexity));
  Builder rows(out, 1e-9);
  out.indicators.assign(static_cast<std::size_t>(n), -1);
  if (complexity) {
    for (int j = 0; j < n; ++j) {
      const double lo = lower[static_cast<std::size_t>(j)];
      const double hi = upper[static_cast<std::size_t>(j)];
      if (lo == 0.0 && hi == 0.0) continue;
      const auto& v = layout.variables()[static_cast<std::size_t>(j)];
      const int z = out.problem.add_column("active[" + v.name + "]", 0.0, 1.0, 0.0, true);
      out.indicators[static_cast<std::size_t>(j)] = z;
      if (hi > 0.0) {
        rows.add("big_m_upper[" + v.name + "]", {{j, 1.0}, {z, -hi}}, lp::RowSense::LessEqual, 0.0, {});
      }
      if (lo < 0.0) {
        rows.add("big_m_lower[" + v.name + "]", {{j, 1.0}, {z, -lo}}, lp::RowSense::GreaterEqual, 0.0, {});
      }
    }
  }

  for (std::size_t c = 0; c < spec.constraints.size(); ++c) {
    const ConstraintSpec& cs = spec.constraints[c];
    const std::string label = constraint_label(cs, c);
    const int ci = static_cast<int>(c);
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, IncomeRelative>) {
            if (!(body.epsilon > -1.0)) throw CompileError("constraint '" + label + "': epsilon must exceed -1");
            for (const auto& unit : resolve(body.selector, population, label)) {
              Aggregate a = aggregate(unit, out.rows, population, body.selector.income_input);
              const double factor = 1.0 + body.epsilon;
              lp::RowSense sense;
              double rhs;
              if (body.form == IncomeRelative::Form::NetIncome) {
                // x - f (>= or <=) (x - y')(1 + eps)  <=>  f (<= or >=) x - (x - y')(1 + eps)
                rhs = a.income - (a.income - a.current) * factor - a.constant;
                sense = body.direction == Direction::AtLeast ? lp::RowSense::LessEqual
                                                             : lp::RowSense::GreaterEqual;
              } else {
                rhs = a.current * factor - a.constant;
                sense = body.direction == Direction::AtLeast ? lp::RowSense::GreaterEqual
                                                             : lp::RowSense::LessEqual;
              }
              rows.add(label + "[" + unit.name + "]", std::move(a.entries), sense, rhs, {ci, unit.name});
            }
          } else if constexpr (std::is_same_v<T, IncomeAbsolute>) {
            for (const auto& unit : resolve(body.selector, population, label)) {
              Aggregate a = aggregate(unit, out.rows, population, body.selector.income_input);
              const double rhs = a.income - body.amount - a.constant;
              const auto sense = body.direction == Direction::AtLeast ? lp::RowSense::LessEqual
                                                                      : lp::RowSense::GreaterEqual;
              rows.add(label + "[" + unit.name + "]", std::move(a.entries), sense, rhs, {ci, unit.name});
            }
          } else if constexpr (std::is_same_v<T, IncomeTight>) {
            for (const auto& unit : resolve(body.selector, population, label)) {
              Aggregate a;
              for (std::size_t i : unit.members) {
                const auto& row = out.rows[i];
                a.entries.insert(a.entries.end(), row.entries.begin(), row.entries.end());
                a.constant += row.constant;
                a.current += population.taxpayers()[i].current_tax;
              }
              rows.add(label + "[" + unit.name + "]", std::move(a.entries), lp::RowSense::Equal,
                       a.current - a.constant, {ci, unit.name});
            }
          } else if constexpr (std::is_same_v<T, RateBound>) {
            // Applied to the column bounds above.
          } else if constexpr (std::is_same_v<T, RateMonotone>) {
            const auto picked = layout.select(body.variables);
            const std::set<int> chosen(picked.begin(), picked.end());
            int added = 0;
            for (const auto& block : layout.rate_blocks()) {
              if (block.tied) continue;
              for (std::size_t b = 0; b + 1 < block.variables.size(); ++b) {
                const int a = block.variables[b];
                const int d = block.variables[b + 1];
                if (!chosen.count(a) || !chosen.count(d)) continue;
                const double s = body.increasing ? 1.0 : -1.0;
                rows.add(label + "[" + layout.variables()[static_cast<std::size_t>(a)].name + "]",
                         {{a, s}, {d, -s}}, lp::RowSense::LessEqual, 0.0, {ci, ""});
                ++added;
              }
            }
            if (added == 0) throw CompileError("constraint '" + label + "' selects no bracket pairs");
          } else if constexpr (std::is_same_v<T, Budget>) {
            // loss = K - W.x  with K = loss_offset, W = loss_weights.
            std::vector<lp::Entry> entries;
            for (int j = 0; j < n; ++j) {
              const double w = out.loss_weights[static_cast<std::size_t>(j)];
              if (w != 0.0) entries.push_back({j, w});
            }
            const double amount = body.fraction_of_revenue ? body.amount * weighted_revenue : body.amount;
            const double k = out.loss_offset;
            switch (body.kind) {
              case Budget::Kind::LossAtMost:
                rows.add(label, entries, lp::RowSense::GreaterEqual, k - amount, {ci, ""});
                break;
              case Budget::Kind::LossAtLeast:
                rows.add(label, entries, lp::RowSense::LessEqual, k - amount, {ci, ""});
                break;
              case Budget::Kind::Neutral:
                rows.add(label + "[loss<=tau]", entries, lp::RowSense::GreaterEqual,
                         k - out.budget_tolerance, {ci, ""});
                rows.add(label + "[loss>=-tau]", entries, lp::RowSense::LessEqual,
                         k + out.budget_tolerance, {ci, ""});
                break;
            }
          } else if constexpr (std::is_same_v<T, Mirror>) {
            const std::size_t i = population.index_of(body.taxpayer);
            const std::size_t m = population.index_of(body.mirror);
            const auto& ri = out.rows[i];
            const auto& rm = out.rows[m];
            const auto sense = body.direction == Direction::AtMost ? lp::RowSense::LessEqual
                                                                   : lp::RowSense::GreaterEqual;
            rows.add(label + "[" + body.taxpayer + "," + body.mirror + "]",
                     difference(ri.entries, rm.entries), sense,
                     body.amount - ri.constant + rm.constant, {ci, body.taxpayer});
          } else if constexpr (std::is_same_v<T, MarginalCap>) {
            std::set<std::pair<std::vector<std::pair<int, double>>, double>> seen;
            for (const auto& unit : resolve(body.selector, population, label)) {
              for (std::size_t i : unit.members) {
                const auto& t = population.taxpayers()[i];
                CoefficientRow m = marginal_row(layout, t, body.selector.income_input);
                std::vector<std::pair<int, double>> key;
                for (const auto& e : m.entries) key.emplace_back(e.column, e.value);
                const double rhs = body.cap - m.constant;
                if (!seen.insert({key, rhs}).second) continue;
                rows.add(label + "[" + t.id + "]", std::move(m.entries), lp::RowSense::LessEqual,
                         rhs, {ci, t.id});
              }
            }
          }
        },
        cs.body);
  }

  const int columns = out.problem.column_count();
  Linear cost;
  if (lexicographic) {
    const Linear first = objective_terms(objective.first, objective, out, columns);
    std::vector<lp::Entry> entries;
    for (int j = 0; j < columns; ++j) {
      if (first.costs[static_cast<std::size_t>(j)] != 0.0) entries.push_back({j, first.costs[static_cast<std::size_t>(j)]});
    }
    if (std::isfinite(objective.slack)) {
      rows.add("first_stage", std::move(entries), lp::RowSense::LessEqual,
               *context.first_stage_optimum + objective.slack - first.offset, {});
    }
    cost = objective_terms(objective.then, objective, out, columns);
  } else {
    cost = objective_terms(objective.kind, objective, out, columns);
  }
  for (int j = 0; j < columns; ++j) out.problem.column(j).cost = cost.costs[static_cast<std::size_t>(j)];
  out.problem.objective_offset = cost.offset;
  return out;
}

std::vector<double> CompiledProblem::values(const lp::Solution& solution) const {
  const std::size_t n = layout->size();
  std::vector<double> v(solution.x.begin(), solution.x.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const int z = indicators[j];
    if (z >= 0 && solution.x[static_cast<std::size_t>(z)] < 0.5 && std::abs(v[j]) <= kSnap) v[j] = 0.0;
  }
  return v;
}

double CompiledProblem::revenue_loss(const std::vector<double>& values) const {
  double loss = loss_offset;
  for (std::size_t j = 0; j < loss_weights.size(); ++j) loss -= loss_weights[j] * values[j];
  return loss;
}

std::vector<std::string> audit_reform(const CompiledProblem& compiled,
                                      const io::Population& population, const ReformSpec& spec,
                                      const std::vector<double>& values, double tol) {
  const Layout& layout = *compiled.layout;
  const tax::TaxCode reform = layout.materialize(values);
  const auto& tp = population.taxpayers();
  std::vector<double> tax(tp.size());
  for (std::size_t i = 0; i < tp.size(); ++i) tax[i] = tax::evaluate_code(reform, tp[i].profile());

  std::vector<std::string> out;
  auto check = [&](const std::string& what, double lhs, lp::RowSense sense, double rhs) {
    const double slack = tol * std::max(1.0, std::abs(rhs));
    const bool ok = (sense == lp::RowSense::LessEqual && lhs <= rhs + slack) ||
                    (sense == lp::RowSense::GreaterEqual && lhs >= rhs - slack) ||
                    (sense == lp::RowSense::Equal && std::abs(lhs - rhs) <= slack);
    if (!ok) {
      out.push_back(what + ": " + std::to_string(lhs) +
                    (sense == lp::RowSense::LessEqual ? " > " : sense == lp::RowSense::GreaterEqual ? " < " : " != ") +
                    std::to_string(rhs));
    }
  };
  for (std::size_t j = 0; j < layout.size(); ++j) {
    const auto& col = compiled.problem.column(static_cast<int>(j));
    check(col.name + " lower bound", values[j], lp::RowSense::GreaterEqual, col.lower);
    check(col.name + " upper bound", values[j], lp::RowSense::LessEqual, col.upper);
  }
  for (std::size_t c = 0; c < spec.constraints.size(); ++c) {
    const std::string label = constraint_label(spec.constraints[c], c);
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          auto sums = [&](const Unit& unit, const std::string& income_input) {
            double x = 0, f = 0, y = 0;
            for (std::size_t i : unit.members) {
              x += input_of(tp[i], income_input);
              f += tax[i];
              y += tp[i].current_tax;
            }
            return std::array<double, 3>{x, f, y};
          };
          if constexpr (std::is_same_v<T, IncomeRelative>) {
            for (const auto& unit : resolve(body.selector, population, label)) {
              const auto [x, f, y] = sums(unit, body.selector.income_input);
              const bool at_least = body.direction == Direction::AtLeast;
              if (body.form == IncomeRelative::Form::NetIncome) {
                check(label + "[" + unit.name + "]", x - f,
                      at_least ? lp::RowSense::GreaterEqual : lp::RowSense::LessEqual,
                      (x - y) * (1.0 + body.epsilon));
              } else {
                check(label + "[" + unit.name + "]", f,
                      at_least ? lp::RowSense::GreaterEqual : lp::RowSense::LessEqual,
                      y * (1.0 + body.epsilon));
              }
            }
          } else if constexpr (std::is_same_v<T, IncomeAbsolute>) {
            for (const auto& unit : resolve(body.selector, population, label)) {
              const auto [x, f, y] = sums(unit, body.selector.income_input);
              check(label + "[" + unit.name + "]", x - f,
                    body.direction == Direction::AtLeast ? lp::RowSense::GreaterEqual
                                                         : lp::RowSense::LessEqual,
                    body.amount);
            }
          } else if constexpr (std::is_same_v<T, IncomeTight>) {
            for (const auto& unit : resolve(body.selector, population, label)) {
              double f = 0, y = 0;
              for (std::size_t i : unit.members) {
                f += tax[i];
                y += tp[i].current_tax;
              }
              check(label + "[" + unit.name + "]", f, lp::RowSense::Equal, y);
            }
          } else if constexpr (std::is_same_v<T, Budget>) {
            double loss = 0.0, revenue = 0.0;
            for (std::size_t i = 0; i < tp.size(); ++i) {
              loss += tp[i].weight * (tp[i].current_tax - tax[i]);
              revenue += tp[i].weight * tp[i].current_tax;
            }
            const double amount = body.fraction_of_revenue ? body.amount * revenue : body.amount;
            switch (body.kind) {
              case Budget::Kind::LossAtMost: check(label, loss, lp::RowSense::LessEqual, amount); break;
              case Budget::Kind::LossAtLeast: check(label, loss, lp::RowSense::GreaterEqual, amount); break;
              case Budget::Kind::Neutral:
                check(label, std::abs(loss), lp::RowSense::LessEqual, compiled.budget_tolerance);
                break;
            }
          } else if constexpr (std::is_same_v<T, Mirror>) {
            const double d = tax[population.index_of(body.taxpayer)] - tax[population.index_of(body.mirror)];
            check(label, d,
                  body.direction == Direction::AtMost ? lp::RowSense::LessEqual : lp::RowSense::GreaterEqual,
                  body.amount);
          } else if constexpr (std::is_same_v<T, MarginalCap>) {
            for (const auto& unit : resolve(body.selector, population, label)) {
              for (std::size_t i : unit.members) {
                const double m = tax::marginal_pressure(reform, tp[i].profile(), body.selector.income_input);
                check(label + "[" + tp[i].id + "]", m, lp::RowSense::LessEqual, body.cap);
              }
            }
          } else if constexpr (std::is_same_v<T, RateMonotone>) {
            const auto picked = layout.select(body.variables);
            const std::set<int> chosen(picked.begin(), picked.end());
            for (const auto& block : layout.rate_blocks()) {
              for (std::size_t b = 0; b + 1 < block.variables.size(); ++b) {
                const int a = block.variables[b];
                const int d = block.variables[b + 1];
                if (!chosen.count(a) || !chosen.count(d)) continue;
                const double lhs = values[static_cast<std::size_t>(a)];
                const double rhs = values[static_cast<std::size_t>(d)];
                check(label, lhs, body.increasing ? lp::RowSense::LessEqual : lp::RowSense::GreaterEqual, rhs);
              }
            }
          }
        },
        spec.constraints[c].body);
  }
  return out;
}

Census rule_census(const tax::TaxCode& code, double threshold) {
  Census census;
  std::map<std::string, CensusRow> by_topic;
  std::vector<std::string> order;
  for (const auto& r : code.rules()) {
    const std::string topic = r.topic.empty() ? r.id : r.topic;
    auto [it, fresh] = by_topic.try_emplace(topic);
    if (fresh) {
      order.push_back(topic);
      it->second.topic = topic;
      it->second.excluded = true;
    }
    CensusRow& row = it->second;
    if (!r.frozen) row.excluded = false;
    if (r.frozen) continue;
    bool active = false;
    bool sloped = false;
    for (const auto& [cell, p] : r.params) {
      if (std::abs(p.lump_sum) > threshold) active = true;
      for (double rate : p.rates) {
        if (std::abs(rate) > threshold) active = sloped = true;
      }
    }
    if (active) {
      ++row.active;
      ++census.active;
    }
    if (sloped && code.income_dependent(r)) {
      ++row.income_dependent;
      ++census.income_dependent;
    }
  }
  for (const auto& t : order) census.topics.push_back(by_topic[t]);
  return census;
}

Census rule_census(const tax::TaxCode& code, const ReformSpec& spec, double threshold) {
  std::vector<tax::TaxRule> rules = code.rules();
  for (auto& r : rules) {
    auto it = spec.rules.find(r.id);
    if (it != spec.rules.end() && it->second.mode == RuleMode::Frozen) r.frozen = true;
  }
  return rule_census(tax::TaxCode(code.name(), code.dimensions(), std::move(rules), code.options()), threshold);
}

}  // namespace fiscalopt::model
