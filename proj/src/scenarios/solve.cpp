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

#include "fiscalopt/scenarios/solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "fiscalopt/error.hpp"
#include "fiscalopt/lp/solver.hpp"

namespace fiscalopt::scenarios {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Outcome solve_compiled(const io::Population& population, const model::ReformSpec& spec,
                       model::CompiledProblem compiled, const lp::SolverOptions& options) {
  Outcome out;
  out.spec = spec;
  out.solution = lp::solve(compiled.problem, options);
  auto shared = std::make_shared<const model::CompiledProblem>(std::move(compiled));
  out.compiled = shared;
  if (out.optimal()) {
    out.values = shared->values(out.solution);
    out.audit = model::audit_reform(*shared, population, spec, out.values);
  }
  for (int r : out.solution.conflict) {
    const auto& origin = shared->origins.at(static_cast<std::size_t>(r));
    ConflictRow row;
    row.row = shared->problem.row(r).name;
    row.constraint = origin.constraint >= 0
                         ? model::constraint_label(spec.constraints.at(static_cast<std::size_t>(origin.constraint)),
                                                   static_cast<std::size_t>(origin.constraint))
                         : row.row;
    row.unit = origin.unit;
    out.conflict.push_back(std::move(row));
  }
  return out;
}

}  // namespace

double Outcome::revenue_loss() const {
  if (!optimal()) return kNaN;
  return compiled->revenue_loss(values);
}

tax::TaxCode Outcome::reformed_code() const {
  if (!optimal()) throw Error("no reformed code for a " + std::string(lp::to_string(solution.status)) + " solve");
  return compiled->layout->materialize(values);
}

std::vector<std::string> Outcome::conflict_constraints() const {
  std::vector<std::string> out;
  for (const auto& c : conflict) {
    if (std::find(out.begin(), out.end(), c.constraint) == out.end()) out.push_back(c.constraint);
  }
  return out;
}

Outcome solve_reform(const tax::TaxCode& code, const io::Population& population, const model::ReformSpec& spec,
                     const lp::SolverOptions& options) {
  if (spec.objective.kind != model::ObjectiveKind::Lexicographic) {
    return solve_compiled(population, spec, model::compile(code, population, spec), options);
  }
  const auto stage1_spec = model::first_stage(spec);
  Outcome first = solve_compiled(population, stage1_spec, model::compile(code, population, stage1_spec), options);
  if (!first.optimal()) return first;
  model::CompileContext context;
  context.first_stage_optimum = first.solution.objective;
  Outcome out = solve_compiled(population, spec, model::compile(code, population, spec, context), options);
  out.first_stage_optimum = first.solution.objective;
  return out;
}

Recovery recover(const tax::TaxCode& code, const io::Population& population, const model::ReformSpec& structure,
                 const lp::SolverOptions& options) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  model::ReformSpec spec = structure;
  if (spec.name.empty()) spec.name = "recover";
  spec.constraints = {{"tight", model::IncomeTight{}}};
  spec.objective = model::ObjectiveSpec{};
  spec.objective.kind = model::ObjectiveKind::MinRevenueLoss;
  spec.rate_lower = spec.lump_lower = -inf;
  spec.rate_upper = spec.lump_upper = inf;
  spec.variable_bounds.clear();

  Recovery r;
  auto compiled = model::compile(code, population, spec);
  const auto n = static_cast<Eigen::Index>(compiled.layout->size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(compiled.rows.size()), n);
  for (std::size_t i = 0; i < compiled.rows.size(); ++i) {
    for (const auto& e : compiled.rows[i].entries) a(static_cast<Eigen::Index>(i), e.column) = e.value;
  }
  // Column scaling keeps rate columns (incomes) and lump columns (ones)
  // comparable for the rank threshold.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double norm = a.col(j).norm();
    if (norm > 0.0) a.col(j) /= norm;
  }
  r.variables = static_cast<int>(n);
  if (n > 0 && a.rows() > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    r.rank = static_cast<int>(qr.rank());
  }
  r.rank_deficient = r.rank < r.variables;
  r.outcome = solve_compiled(population, spec, std::move(compiled), options);
  return r;
}

TwoStep two_step_reform(const tax::TaxCode& code, const io::Population& population, const model::ReformSpec& spec,
                        double slack, const lp::SolverOptions& options) {
  if (!(slack >= 0.0)) throw ValidationError("two-step slack must be non-negative");
  TwoStep out;
  out.before = model::rule_census(code, spec);

  model::ReformSpec stage1 = spec;
  stage1.objective.kind = model::ObjectiveKind::MinRevenueLoss;
  out.first = solve_compiled(population, stage1, model::compile(code, population, stage1), options);
  if (!out.first.optimal()) return out;
  out.after_first = model::rule_census(out.first.reformed_code(), spec);

  model::ReformSpec stage2 = spec;
  stage2.objective.kind = model::ObjectiveKind::Lexicographic;
  stage2.objective.first = model::ObjectiveKind::MinRevenueLoss;
  stage2.objective.then = model::ObjectiveKind::MinComplexity;
  stage2.objective.slack = slack;
  model::CompileContext context;
  context.first_stage_optimum = out.first.solution.objective;
  out.second = solve_compiled(population, stage2, model::compile(code, population, stage2, context), options);
  out.second.first_stage_optimum = out.first.solution.objective;
  if (out.second.optimal()) out.after_second = model::rule_census(out.second.reformed_code(), spec);
  return out;
}

model::ReformSpec with_cap(model::ReformSpec spec, double cap) {
  bool found = false;
  for (auto& c : spec.constraints) {
    if (auto* m = std::get_if<model::MarginalCap>(&c.body)) {
      m->cap = cap;
      found = true;
    } else if (auto* b = std::get_if<model::RateBound>(&c.body); b && b->upper) {
      b->upper = cap;
      found = true;
    }
  }
  if (!found) spec.constraints.push_back({"marginal_cap", model::MarginalCap{{}, cap}});
  return spec;
}

Frontier sweep_frontier(const tax::TaxCode& code, const io::Population& population, const model::ReformSpec& spec,
                        const std::vector<double>& caps, const lp::SolverOptions& options, unsigned threads) {
  if (!std::is_sorted(caps.begin(), caps.end())) throw ValidationError("caps must be ascending");
  Frontier frontier;
  frontier.rows.resize(caps.size());
  std::vector<std::string> errors(caps.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < caps.size(); i = next++) {
      FrontierRow& row = frontier.rows[i];
      row.cap = caps[i];
      try {
        auto shared = std::make_shared<const Outcome>(solve_reform(code, population, with_cap(spec, caps[i]), options));
        const Outcome& o = *shared;
        row.outcome = shared;
        row.status = lp::to_string(o.solution.status);
        if (o.optimal()) {
          // The minimal loss of a staged solve is its first stage optimum.
          const bool staged = spec.objective.kind == model::ObjectiveKind::Lexicographic &&
                              spec.objective.first == model::ObjectiveKind::MinRevenueLoss;
          row.loss = staged && o.first_stage_optimum ? *o.first_stage_optimum : o.revenue_loss();
          const auto census = model::rule_census(o.reformed_code(), spec);
          row.active = census.active;
          row.income_dependent = census.income_dependent;
        } else {
          row.loss = kNaN;
          row.conflict = o.conflict_constraints();
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, caps.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw Error(e);
  }

  double previous = std::numeric_limits<double>::infinity();
  for (const auto& row : frontier.rows) {
    const double loss = std::isnan(row.loss) ? std::numeric_limits<double>::infinity() : row.loss;
    if (std::isfinite(previous) && loss > previous + 1e-6 * std::max(1.0, std::abs(previous))) {
      frontier.monotone = false;
    }
    previous = loss;
  }
  return frontier;
}

}  // namespace fiscalopt::scenarios
