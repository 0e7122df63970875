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

#include "fiscalopt/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "fiscalopt/error.hpp"

namespace fiscalopt::report {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

Report build_report(const model::CompiledProblem& compiled, const io::Population& population,
                    const model::ReformSpec& spec, const lp::Solution& solution,
                    const ReportOptions& options) {
  if (solution.status != lp::Status::Optimal) {
    throw Error(std::string("no report for a ") + lp::to_string(solution.status) + " solution");
  }
  const auto& layout = *compiled.layout;
  const auto values = compiled.values(solution);
  const auto current = layout.current_values();
  const tax::TaxCode reformed = layout.materialize(values);

  Report r;
  r.name = spec.name;
  r.status = lp::to_string(solution.status);
  r.objective = solution.objective;

  std::vector<std::pair<double, double>> cutoffs(layout.size(), {0.0, 0.0});
  for (const auto& block : layout.rate_blocks()) {
    for (std::size_t b = 0; b < block.variables.size(); ++b) {
      auto& c = cutoffs[static_cast<std::size_t>(block.variables[b])];
      if (block.tied) {
        c = {0.0, tax::kInfinity};
      } else {
        c = {block.support.lower(b), block.support.upper(b)};
      }
    }
  }
  for (std::size_t j = 0; j < layout.size(); ++j) {
    const auto& v = layout.variables()[j];
    RateLine line;
    line.name = v.name;
    line.kind = v.kind == model::VariableKind::Rate ? "rate" : v.kind == model::VariableKind::Lump ? "lump" : "scale";
    line.input = v.input;
    line.rule = v.rule;
    line.cell = tax::cell_name(v.dims, v.cell);
    line.bracket_lower = cutoffs[j].first;
    line.bracket_upper = cutoffs[j].second;
    line.current = current[j];
    line.reformed = values[j];
    r.rates.push_back(std::move(line));
  }

  r.taxpayer_count = population.size();
  r.truncated = population.size() > options.max_records;
  const std::size_t stride =
      r.truncated ? (population.size() + options.max_records - 1) / std::max<std::size_t>(1, options.max_records) : 1;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const auto& t = population.taxpayers()[i];
    const double new_tax = compiled.rows[i].evaluate(values);
    r.revenue_before += t.weight * t.current_tax;
    r.revenue_after += t.weight * new_tax;
    if (options.max_records == 0 || i % stride != 0) continue;
    TaxpayerLine line;
    line.id = t.id;
    line.weight = t.weight;
    auto it = t.inputs.find(options.income_input);
    line.income = it == t.inputs.end() ? 0.0 : it->second;
    line.old_tax = t.current_tax;
    line.new_tax = new_tax;
    line.old_net = line.income - line.old_tax;
    line.new_net = line.income - line.new_tax;
    const auto profile = t.profile();
    line.old_marginal = tax::marginal_pressure(layout.code(), profile, options.income_input);
    line.new_marginal = tax::marginal_pressure(reformed, profile, options.income_input);
    r.taxpayers.push_back(std::move(line));
  }
  r.revenue_loss = r.revenue_before - r.revenue_after;
  r.census_before = model::rule_census(layout.code(), spec);
  r.census_after = model::rule_census(reformed, spec);
  r.audit = model::audit_reform(compiled, population, spec, values);
  return r;
}

Json census_to_json(const model::Census& census) {
  Json topics = Json::array();
  for (const auto& row : census.topics) {
    topics.push_back({{"topic", row.topic},
                      {"active", row.active},
                      {"income_dependent", row.income_dependent},
                      {"excluded", row.excluded}});
  }
  return {{"topics", topics}, {"active", census.active}, {"income_dependent", census.income_dependent}};
}

Json report_to_json(const Report& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = r.name;
  j["status"] = r.status;
  j["objective"] = r.objective;
  Json rates = Json::array();
  for (const auto& l : r.rates) {
    Json rj{{"name", l.name}, {"kind", l.kind}, {"cell", l.cell}, {"current", l.current}, {"reformed", l.reformed}};
    if (!l.input.empty()) rj["input"] = l.input;
    if (!l.rule.empty()) rj["rule"] = l.rule;
    if (l.kind == "rate") {
      rj["bracket_lower"] = l.bracket_lower;
      // JSON has no infinity; an open top bracket has no upper cutoff.
      if (l.bracket_upper < tax::kInfinity) rj["bracket_upper"] = l.bracket_upper;
    }
    rates.push_back(std::move(rj));
  }
  j["rates"] = rates;
  Json taxpayers = Json::array();
  Json marginal = {{"income", Json::array()}, {"old", Json::array()}, {"new", Json::array()}};
  for (const auto& t : r.taxpayers) {
    taxpayers.push_back({{"id", t.id},
                         {"weight", t.weight},
                         {"income", t.income},
                         {"old_tax", t.old_tax},
                         {"new_tax", t.new_tax},
                         {"old_net_income", t.old_net},
                         {"new_net_income", t.new_net}});
    marginal["income"].push_back(t.income);
    marginal["old"].push_back(t.old_marginal);
    marginal["new"].push_back(t.new_marginal);
  }
  j["taxpayers"] = taxpayers;
  j["taxpayer_count"] = r.taxpayer_count;
  j["truncated"] = r.truncated;
  j["marginal_pressure"] = marginal;
  j["budget"] = {{"revenue_before", r.revenue_before},
                 {"revenue_after", r.revenue_after},
                 {"revenue_loss", r.revenue_loss}};
  j["census"] = {{"before", census_to_json(r.census_before)}, {"after", census_to_json(r.census_after)}};
  j["audit"] = r.audit;
  return j;
}

Json population_summary(const io::Population& population, const tax::TaxCode* code) {
  struct Range {
    double min = tax::kInfinity;
    double max = -tax::kInfinity;
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, Range> inputs;
  std::map<std::string, std::map<std::string, std::size_t>> characteristics;
  double weight = 0.0;
  double revenue = 0.0;
  for (const auto& t : population.taxpayers()) {
    weight += t.weight;
    revenue += t.weight * t.current_tax;
    for (const auto& [name, value] : t.inputs) {
      auto& r = inputs[name];
      r.min = std::min(r.min, value);
      r.max = std::max(r.max, value);
      r.sum += value;
      ++r.count;
    }
    for (const auto& [name, value] : t.characteristics) ++characteristics[name][value];
  }
  Json j;
  j["taxpayers"] = population.size();
  j["households"] = population.households().size();
  j["total_weight"] = weight;
  j["current_revenue"] = revenue;
  Json in = Json::object();
  for (const auto& [name, r] : inputs) {
    in[name] = {{"min", r.min}, {"mean", r.sum / static_cast<double>(r.count)}, {"max", r.max}, {"count", r.count}};
  }
  j["inputs"] = in;
  j["characteristics"] = characteristics;
  j["metadata"] = population.metadata();
  if (code) {
    double worst = 0.0;
    std::size_t mismatches = 0;
    std::string worst_id;
    for (const auto& t : population.taxpayers()) {
      const double d = std::abs(tax::evaluate_code(*code, t.profile()) - t.current_tax);
      if (d > 1e-6 * std::max(1.0, std::abs(t.current_tax))) ++mismatches;
      if (d > worst) {
        worst = d;
        worst_id = t.id;
      }
    }
    j["current_tax_check"] = {{"code", code->name()}, {"mismatches", mismatches}, {"max_abs_deviation", worst}};
    if (!worst_id.empty()) j["current_tax_check"]["worst_taxpayer"] = worst_id;
  }
  return j;
}

std::string taxpayers_csv(const Report& r) {
  std::ostringstream out;
  out << "id,weight,income,old_tax,new_tax,old_net_income,new_net_income,old_marginal,new_marginal\n";
  for (const auto& t : r.taxpayers) {
    out << csv_field(t.id) << ',' << num(t.weight) << ',' << num(t.income) << ',' << num(t.old_tax) << ','
        << num(t.new_tax) << ',' << num(t.old_net) << ',' << num(t.new_net) << ',' << num(t.old_marginal) << ','
        << num(t.new_marginal) << '\n';
  }
  return out.str();
}

std::string rates_csv(const Report& r) {
  std::ostringstream out;
  out << "name,kind,input,rule,cell,bracket_lower,bracket_upper,current,reformed\n";
  for (const auto& l : r.rates) {
    out << csv_field(l.name) << ',' << l.kind << ',' << csv_field(l.input) << ',' << csv_field(l.rule) << ','
        << csv_field(l.cell) << ',' << num(l.bracket_lower) << ',' << num(l.bracket_upper) << ','
        << num(l.current) << ',' << num(l.reformed) << '\n';
  }
  return out.str();
}

std::string census_table(const model::Census& census) {
  std::size_t width = 5;
  for (const auto& row : census.topics) width = std::max(width, row.topic.size());
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s %8s %10s\n", static_cast<int>(width), "Topic", "Active", "Inc. dep.");
  out << line;
  for (const auto& row : census.topics) {
    if (row.excluded) {
      std::snprintf(line, sizeof line, "%-*s %8s %10s\n", static_cast<int>(width), row.topic.c_str(), "-", "-");
    } else {
      std::snprintf(line, sizeof line, "%-*s %8d %10d\n", static_cast<int>(width), row.topic.c_str(), row.active,
                    row.income_dependent);
    }
    out << line;
  }
  std::snprintf(line, sizeof line, "%-*s %8d %10d\n", static_cast<int>(width), "Total", census.active,
                census.income_dependent);
  out << line;
  return out.str();
}

}  // namespace fiscalopt::report
