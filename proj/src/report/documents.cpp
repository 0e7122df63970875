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

#include "fiscalopt/report/documents.hpp"

#include <initializer_list>
#include <optional>
#include <utility>

#include "fiscalopt/error.hpp"

namespace fiscalopt::report {

namespace {

using model::Direction;

/// Collects problems with their JSON-pointer paths while reading a document.
class Reader {
 public:
  std::vector<std::string> issues;

  void fail(const std::string& path, const std::string& message) {
    issues.push_back((path.empty() ? std::string("/") : path) + ": " + message);
  }

  bool object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (auto a : allowed) known = known || a == key;
      if (!known) fail(path + "/" + key, "unknown field");
    }
    return true;
  }

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) fail(path + "/" + key, "required");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> opt_number(const Json& obj, const std::string& path, const char* key,
                                   bool required = false) {
    const Json* j = field(obj, path, key, required);
    if (!j) return std::nullopt;
    if (!j->is_number()) {
      fail(path + "/" + key, "expected a number");
      return std::nullopt;
    }
    return j->get<double>();
  }

  double number(const Json& obj, const std::string& path, const char* key, double fallback,
                bool required = false) {
    return opt_number(obj, path, key, required).value_or(fallback);
  }

  std::optional<int> opt_integer(const Json& obj, const std::string& path, const char* key) {
    const Json* j = field(obj, path, key, false);
    if (!j) return std::nullopt;
    if (!j->is_number_integer()) {
      fail(path + "/" + key, "expected an integer");
      return std::nullopt;
    }
    return j->get<int>();
  }

  std::string string(const Json& obj, const std::string& path, const char* key, std::string fallback,
                     bool required = false) {
    const Json* j = field(obj, path, key, required);
    if (!j) return fallback;
    if (!j->is_string()) {
      fail(path + "/" + key, "expected a string");
      return fallback;
    }
    return j->get<std::string>();
  }

  bool boolean(const Json& obj, const std::string& path, const char* key, bool fallback) {
    const Json* j = field(obj, path, key, false);
    if (!j) return fallback;
    if (!j->is_boolean()) {
      fail(path + "/" + key, "expected a boolean");
      return fallback;
    }
    return j->get<bool>();
  }

  std::vector<double> numbers(const Json& obj, const std::string& path, const char* key) {
    std::vector<double> out;
    const Json* j = field(obj, path, key, false);
    if (!j) return out;
    if (!j->is_array()) {
      fail(path + "/" + key, "expected an array of numbers");
      return out;
    }
    for (std::size_t i = 0; i < j->size(); ++i) {
      if (!(*j)[i].is_number()) {
        fail(path + "/" + key + "/" + std::to_string(i), "expected a number");
      } else {
        out.push_back((*j)[i].get<double>());
      }
    }
    return out;
  }

  std::vector<std::string> strings(const Json& obj, const std::string& path, const char* key) {
    std::vector<std::string> out;
    const Json* j = field(obj, path, key, false);
    if (!j) return out;
    if (!j->is_array()) {
      fail(path + "/" + key, "expected an array of strings");
      return out;
    }
    for (std::size_t i = 0; i < j->size(); ++i) {
      if (!(*j)[i].is_string()) {
        fail(path + "/" + key + "/" + std::to_string(i), "expected a string");
      } else {
        out.push_back((*j)[i].get<std::string>());
      }
    }
    return out;
  }

  std::map<std::string, std::string> string_map(const Json& obj, const std::string& path, const char* key) {
    std::map<std::string, std::string> out;
    const Json* j = field(obj, path, key, false);
    if (!j) return out;
    if (!j->is_object()) {
      fail(path + "/" + key, "expected an object of strings");
      return out;
    }
    for (const auto& [k, v] : j->items()) {
      if (!v.is_string()) {
        fail(path + "/" + key + "/" + k, "expected a string");
      } else {
        out[k] = v.get<std::string>();
      }
    }
    return out;
  }

  std::map<std::string, std::set<std::string>> set_map(const Json& obj, const std::string& path,
                                                       const char* key) {
    std::map<std::string, std::set<std::string>> out;
    const Json* j = field(obj, path, key, false);
    if (!j) return out;
    if (!j->is_object()) {
      fail(path + "/" + key, "expected an object of string arrays");
      return out;
    }
    for (const auto& [k, v] : j->items()) {
      auto values = strings(*j, path + "/" + key, k.c_str());
      out[k].insert(values.begin(), values.end());
    }
    return out;
  }

  template <class E>
  E choice(const Json& obj, const std::string& path, const char* key,
           std::initializer_list<std::pair<std::string_view, E>> options, E fallback,
           bool required = false) {
    const Json* j = field(obj, path, key, required);
    if (!j) return fallback;
    if (j->is_string()) {
      const auto text = j->get<std::string>();
      for (const auto& [name, value] : options) {
        if (name == text) return value;
      }
    }
    std::string expected;
    for (const auto& [name, value] : options) expected += (expected.empty() ? "" : ", ") + std::string(name);
    fail(path + "/" + key, "expected one of " + expected);
    return fallback;
  }
};

const std::initializer_list<std::pair<std::string_view, Direction>> kDirections = {
    {"at_least", Direction::AtLeast}, {"at_most", Direction::AtMost}};

std::string_view name_of(Direction d) { return d == Direction::AtLeast ? "at_least" : "at_most"; }

const std::initializer_list<std::pair<std::string_view, model::ObjectiveKind>> kObjectives = {
    {"feasibility", model::ObjectiveKind::Feasibility},
    {"min_revenue_loss", model::ObjectiveKind::MinRevenueLoss},
    {"min_complexity", model::ObjectiveKind::MinComplexity},
    {"min_rates", model::ObjectiveKind::MinRates},
    {"lexicographic", model::ObjectiveKind::Lexicographic}};

// ---- tax code ----

Json params_to_json(const tax::GroupCell& cell, const tax::RuleParams& p) {
  Json j;
  j["cell"] = cell;
  j["cutoffs"] = std::vector<double>(p.support.cutoffs().begin(), p.support.cutoffs().end());
  j["rates"] = p.rates;
  j["lump_sum"] = p.lump_sum;
  j["deduction"] = p.deduction;
  return j;
}

std::map<tax::GroupCell, tax::RuleParams> read_params(Reader& r, const Json& obj, const std::string& path) {
  std::map<tax::GroupCell, tax::RuleParams> out;
  const Json* list = r.field(obj, path, "params", false);
  if (!list) return out;
  if (!list->is_array()) {
    r.fail(path + "/params", "expected an array");
    return out;
  }
  for (std::size_t i = 0; i < list->size(); ++i) {
    const std::string p = path + "/params/" + std::to_string(i);
    const Json& item = (*list)[i];
    if (!r.object(item, p, {"cell", "cutoffs", "rates", "lump_sum", "deduction"})) continue;
    tax::RuleParams params;
    try {
      params.support = tax::Support(r.numbers(item, p, "cutoffs"));
    } catch (const Error& e) {
      r.fail(p + "/cutoffs", e.what());
    }
    params.rates = r.numbers(item, p, "rates");
    params.lump_sum = r.number(item, p, "lump_sum", 0.0);
    params.deduction = r.number(item, p, "deduction", 0.0);
    const auto cell = r.strings(item, p, "cell");
    if (out.count(cell)) r.fail(p + "/cell", "duplicate cell");
    out[cell] = std::move(params);
  }
  return out;
}

Json params_map_to_json(const std::map<tax::GroupCell, tax::RuleParams>& params) {
  Json list = Json::array();
  for (const auto& [cell, p] : params) list.push_back(params_to_json(cell, p));
  return list;
}

// ---- reform spec ----

Json selector_to_json(const model::Selector& s) {
  Json j;
  j["level"] = s.level == model::Selector::Level::Household ? "household" : "individual";
  j["income_input"] = s.income_input;
  if (s.income_min) j["income_min"] = *s.income_min;
  if (s.income_max) j["income_max"] = *s.income_max;
  if (s.quantile_min) j["quantile_min"] = *s.quantile_min;
  if (s.quantile_max) j["quantile_max"] = *s.quantile_max;
  if (!s.characteristics.empty()) {
    Json c = Json::object();
    for (const auto& [k, v] : s.characteristics) c[k] = std::vector<std::string>(v.begin(), v.end());
    j["characteristics"] = c;
  }
  if (!s.ids.empty()) j["ids"] = s.ids;
  return j;
}

model::Selector read_selector(Reader& r, const Json& obj, const std::string& path) {
  model::Selector s;
  const Json* j = r.field(obj, path, "selector", false);
  if (!j) return s;
  const std::string p = path + "/selector";
  if (!r.object(*j, p, {"level", "income_input", "income_min", "income_max", "quantile_min",
                        "quantile_max", "characteristics", "ids"})) {
    return s;
  }
  s.level = r.choice(*j, p, "level",
                     {{"individual", model::Selector::Level::Individual},
                      {"household", model::Selector::Level::Household}},
                     model::Selector::Level::Individual);
  s.income_input = r.string(*j, p, "income_input", s.income_input);
  s.income_min = r.opt_number(*j, p, "income_min");
  s.income_max = r.opt_number(*j, p, "income_max");
  s.quantile_min = r.opt_number(*j, p, "quantile_min");
  s.quantile_max = r.opt_number(*j, p, "quantile_max");
  s.characteristics = r.set_map(*j, p, "characteristics");
  s.ids = r.strings(*j, p, "ids");
  return s;
}

Json variables_to_json(const model::VariableSelector& v) {
  using K = model::VariableSelector::Kind;
  Json j;
  j["kind"] = v.kind == K::Rate ? "rate" : v.kind == K::Lump ? "lump" : v.kind == K::Scale ? "scale" : "any";
  if (!v.input.empty()) j["input"] = v.input;
  if (!v.rule.empty()) j["rule"] = v.rule;
  if (!v.group.empty()) j["group"] = v.group;
  if (v.bracket_min) j["bracket_min"] = *v.bracket_min;
  if (v.bracket_max) j["bracket_max"] = *v.bracket_max;
  return j;
}

model::VariableSelector read_variables(Reader& r, const Json& obj, const std::string& path) {
  using K = model::VariableSelector::Kind;
  model::VariableSelector v;
  const Json* j = r.field(obj, path, "variables", false);
  if (!j) return v;
  const std::string p = path + "/variables";
  if (!r.object(*j, p, {"kind", "input", "rule", "group", "bracket_min", "bracket_max"})) return v;
  v.kind = r.choice(*j, p, "kind", {{"any", K::Any}, {"rate", K::Rate}, {"lump", K::Lump}, {"scale", K::Scale}},
                    K::Any);
  v.input = r.string(*j, p, "input", "");
  v.rule = r.string(*j, p, "rule", "");
  v.group = r.string_map(*j, p, "group");
  v.bracket_min = r.opt_integer(*j, p, "bracket_min");
  v.bracket_max = r.opt_integer(*j, p, "bracket_max");
  return v;
}

Json constraint_to_json(const model::ConstraintSpec& c) {
  Json j;
  j["name"] = c.name;
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, model::IncomeRelative>) {
          j["kind"] = "income_relative";
          j["selector"] = selector_to_json(body.selector);
          j["epsilon"] = body.epsilon;
          j["direction"] = name_of(body.direction);
          j["form"] = body.form == model::IncomeRelative::Form::Tax ? "tax" : "net_income";
        } else if constexpr (std::is_same_v<T, model::IncomeAbsolute>) {
          j["kind"] = "income_absolute";
          j["selector"] = selector_to_json(body.selector);
          j["amount"] = body.amount;
          j["direction"] = name_of(body.direction);
        } else if constexpr (std::is_same_v<T, model::IncomeTight>) {
          j["kind"] = "income_tight";
          j["selector"] = selector_to_json(body.selector);
        } else if constexpr (std::is_same_v<T, model::RateBound>) {
          j["kind"] = "rate_bound";
          j["variables"] = variables_to_json(body.variables);
          if (body.lower) j["lower"] = *body.lower;
          if (body.upper) j["upper"] = *body.upper;
        } else if constexpr (std::is_same_v<T, model::RateMonotone>) {
          j["kind"] = "rate_monotone";
          j["variables"] = variables_to_json(body.variables);
          j["increasing"] = body.increasing;
        } else if constexpr (std::is_same_v<T, model::Budget>) {
          using B = model::Budget::Kind;
          j["kind"] = "budget";
          j["budget"] = body.kind == B::Neutral ? "neutral" : body.kind == B::LossAtMost ? "loss_at_most" : "loss_at_least";
          j["amount"] = body.amount;
          j["fraction_of_revenue"] = body.fraction_of_revenue;
        } else if constexpr (std::is_same_v<T, model::Mirror>) {
          j["kind"] = "mirror";
          j["taxpayer"] = body.taxpayer;
          j["mirror"] = body.mirror;
          j["amount"] = body.amount;
          j["direction"] = name_of(body.direction);
        } else {
          j["kind"] = "marginal_cap";
          j["selector"] = selector_to_json(body.selector);
          j["cap"] = body.cap;
        }
      },
      c.body);
  return j;
}

std::optional<model::ConstraintSpec> read_constraint(Reader& r, const Json& j, const std::string& p) {
  if (!r.object(j, p, {"name", "kind", "selector", "epsilon", "direction", "form", "amount", "variables",
                       "lower", "upper", "increasing", "budget", "fraction_of_revenue", "taxpayer",
                       "mirror", "cap"})) {
    return std::nullopt;
  }
  model::ConstraintSpec c;
  c.name = r.string(j, p, "name", "");
  const std::string kind = r.string(j, p, "kind", "", true);
  if (kind == "income_relative") {
    model::IncomeRelative b;
    b.selector = read_selector(r, j, p);
    b.epsilon = r.number(j, p, "epsilon", 0.0);
    b.direction = r.choice(j, p, "direction", kDirections, Direction::AtLeast);
    b.form = r.choice(j, p, "form",
                      {{"net_income", model::IncomeRelative::Form::NetIncome},
                       {"tax", model::IncomeRelative::Form::Tax}},
                      model::IncomeRelative::Form::NetIncome);
    c.body = b;
  } else if (kind == "income_absolute") {
    model::IncomeAbsolute b;
    b.selector = read_selector(r, j, p);
    b.amount = r.number(j, p, "amount", 0.0, true);
    b.direction = r.choice(j, p, "direction", kDirections, Direction::AtLeast);
    c.body = b;
  } else if (kind == "income_tight") {
    c.body = model::IncomeTight{read_selector(r, j, p)};
  } else if (kind == "rate_bound") {
    model::RateBound b;
    b.variables = read_variables(r, j, p);
    b.lower = r.opt_number(j, p, "lower");
    b.upper = r.opt_number(j, p, "upper");
    c.body = b;
  } else if (kind == "rate_monotone") {
    model::RateMonotone b;
    b.variables = read_variables(r, j, p);
    b.increasing = r.boolean(j, p, "increasing", true);
    c.body = b;
  } else if (kind == "budget") {
    using B = model::Budget::Kind;
    model::Budget b;
    b.kind = r.choice(j, p, "budget",
                      {{"neutral", B::Neutral}, {"loss_at_most", B::LossAtMost}, {"loss_at_least", B::LossAtLeast}},
                      B::Neutral);
    b.amount = r.number(j, p, "amount", 0.0);
    b.fraction_of_revenue = r.boolean(j, p, "fraction_of_revenue", false);
    c.body = b;
  } else if (kind == "mirror") {
    model::Mirror b;
    b.taxpayer = r.string(j, p, "taxpayer", "", true);
    b.mirror = r.string(j, p, "mirror", "", true);
    b.amount = r.number(j, p, "amount", 0.0);
    b.direction = r.choice(j, p, "direction", kDirections, Direction::AtMost);
    c.body = b;
  } else if (kind == "marginal_cap") {
    model::MarginalCap b;
    b.selector = read_selector(r, j, p);
    b.cap = r.number(j, p, "cap", 1.0, true);
    c.body = b;
  } else {
    if (!kind.empty()) r.fail(p + "/kind", "unknown constraint kind '" + kind + "'");
    return std::nullopt;
  }
  return c;
}

Json objective_to_json(const model::ObjectiveSpec& o) {
  Json j;
  j["kind"] = model::to_string(o.kind);
  if (o.kind == model::ObjectiveKind::MinRates) {
    j["variables"] = variables_to_json(o.variables);
    j["maximize"] = o.maximize;
  }
  j["income_dependent_weight"] = o.income_dependent_weight;
  if (o.kind == model::ObjectiveKind::Lexicographic) {
    j["first"] = model::to_string(o.first);
    j["then"] = model::to_string(o.then);
    j["slack"] = o.slack;
  }
  return j;
}

model::ObjectiveSpec read_objective(Reader& r, const Json& doc) {
  model::ObjectiveSpec o;
  const Json* j = r.field(doc, "", "objective", false);
  if (!j) return o;
  const std::string p = "/objective";
  if (!r.object(*j, p, {"kind", "variables", "maximize", "income_dependent_weight", "first", "then", "slack"})) {
    return o;
  }
  o.kind = r.choice(*j, p, "kind", kObjectives, model::ObjectiveKind::Feasibility, true);
  o.variables = read_variables(r, *j, p);
  o.maximize = r.boolean(*j, p, "maximize", false);
  o.income_dependent_weight = r.number(*j, p, "income_dependent_weight", o.income_dependent_weight);
  o.first = r.choice(*j, p, "first", kObjectives, o.first);
  o.then = r.choice(*j, p, "then", kObjectives, o.then);
  o.slack = r.number(*j, p, "slack", 0.0);
  return o;
}

[[noreturn]] void reject(Reader& r) { throw ValidationError(std::move(r.issues)); }

}  // namespace

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

Json code_to_json(const tax::TaxCode& code) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = code.name();
  Json dims = Json::array();
  for (const auto& d : code.dimensions()) {
    dims.push_back({{"name", d.name}, {"characteristic", d.characteristic}, {"values", d.values}});
  }
  j["dimensions"] = dims;
  j["options"] = {{"income_inputs", code.options().income_inputs},
                  {"household_sums", code.options().household_sums}};
  Json rules = Json::array();
  for (const auto& rule : code.rules()) {
    Json rj;
    rj["id"] = rule.id;
    rj["kind"] = tax::to_string(rule.kind);
    rj["input"] = rule.input;
    rj["group_by"] = rule.group_by;
    Json elig = Json::object();
    for (const auto& [k, v] : rule.eligibility) elig[k] = std::vector<std::string>(v.begin(), v.end());
    rj["eligibility"] = elig;
    if (!rule.credited_rule.empty()) rj["credited_rule"] = rule.credited_rule;
    rj["topic"] = rule.topic;
    rj["frozen"] = rule.frozen;
    if (rule.income_dependent) rj["income_dependent"] = *rule.income_dependent;
    rj["params"] = params_map_to_json(rule.params);
    rules.push_back(std::move(rj));
  }
  j["rules"] = rules;
  return j;
}

tax::TaxCode code_from_json(const Json& doc) {
  Reader r;
  if (!r.object(doc, "", {"schema_version", "name", "dimensions", "options", "rules"})) reject(r);
  if (auto v = r.opt_integer(doc, "", "schema_version"); v && *v != kSchemaVersion) {
    r.fail("/schema_version", "unsupported version " + std::to_string(*v));
  }
  const std::string name = r.string(doc, "", "name", "");

  std::vector<tax::GroupDimension> dims;
  if (const Json* list = r.field(doc, "", "dimensions", false)) {
    if (!list->is_array()) r.fail("/dimensions", "expected an array");
    for (std::size_t i = 0; list->is_array() && i < list->size(); ++i) {
      const std::string p = "/dimensions/" + std::to_string(i);
      if (!r.object((*list)[i], p, {"name", "characteristic", "values"})) continue;
      tax::GroupDimension d;
      d.name = r.string((*list)[i], p, "name", "", true);
      d.characteristic = r.string((*list)[i], p, "characteristic", d.name);
      d.values = r.string_map((*list)[i], p, "values");
      if (d.values.empty()) r.fail(p + "/values", "at least one value is required");
      dims.push_back(std::move(d));
    }
  }

  tax::CodeOptions options;
  if (const Json* o = r.field(doc, "", "options", false)) {
    if (r.object(*o, "/options", {"income_inputs", "household_sums"})) {
      if (o->contains("income_inputs")) options.income_inputs = r.strings(*o, "/options", "income_inputs");
      if (o->contains("household_sums")) options.household_sums = r.string_map(*o, "/options", "household_sums");
    }
  }

  std::vector<tax::TaxRule> rules;
  const Json* list = r.field(doc, "", "rules", true);
  if (list && !list->is_array()) r.fail("/rules", "expected an array");
  for (std::size_t i = 0; list && list->is_array() && i < list->size(); ++i) {
    const std::string p = "/rules/" + std::to_string(i);
    const Json& j = (*list)[i];
    if (!r.object(j, p, {"id", "kind", "input", "group_by", "eligibility", "credited_rule", "topic", "frozen",
                         "income_dependent", "params"})) {
      continue;
    }
    tax::TaxRule rule;
    rule.id = r.string(j, p, "id", "", true);
    rule.kind = r.choice(j, p, "kind",
                         {{"bracket", tax::RuleKind::Bracket},
                          {"benefit", tax::RuleKind::Benefit},
                          {"input_reducing_deductible", tax::RuleKind::InputReducingDeductible},
                          {"tax_crediting_deductible", tax::RuleKind::TaxCreditingDeductible}},
                         tax::RuleKind::Bracket, true);
    rule.input = r.string(j, p, "input", "");
    rule.group_by = r.strings(j, p, "group_by");
    rule.eligibility = r.set_map(j, p, "eligibility");
    rule.credited_rule = r.string(j, p, "credited_rule", "");
    rule.topic = r.string(j, p, "topic", "");
    rule.frozen = r.boolean(j, p, "frozen", false);
    if (j.contains("income_dependent")) rule.income_dependent = r.boolean(j, p, "income_dependent", false);
    rule.params = read_params(r, j, p);
    for (const auto& problem : tax::check_rule(rule)) r.fail(p, problem);
    rules.push_back(std::move(rule));
  }
  if (!r.issues.empty()) reject(r);
  return tax::TaxCode(name, std::move(dims), std::move(rules), std::move(options));
}

tax::TaxCode parse_code(std::string_view text) { return code_from_json(parse_json(text, "tax code")); }

Json spec_to_json(const model::ReformSpec& spec) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = spec.name;
  j["objective"] = objective_to_json(spec.objective);
  Json cs = Json::array();
  for (const auto& c : spec.constraints) cs.push_back(constraint_to_json(c));
  j["constraints"] = cs;
  Json rules = Json::object();
  for (const auto& [id, s] : spec.rules) {
    Json rj;
    rj["mode"] = model::to_string(s.mode);
    if (s.params) rj["params"] = params_map_to_json(*s.params);
    if (s.mode == model::RuleMode::Scale) {
      rj["scale_lower"] = s.scale_lower;
      rj["scale_upper"] = s.scale_upper;
    }
    rules[id] = rj;
  }
  j["rules"] = rules;
  Json overrides = Json::array();
  for (const auto& o : spec.support_overrides) {
    overrides.push_back({{"input", o.input},
                         {"group", o.group},
                         {"cutoffs", std::vector<double>(o.support.cutoffs().begin(), o.support.cutoffs().end())}});
  }
  j["support_overrides"] = overrides;
  j["tied_inputs"] = spec.tied_inputs;
  j["merged_dimensions"] = spec.merged_dimensions;
  j["rate_lower"] = spec.rate_lower;
  j["rate_upper"] = spec.rate_upper;
  j["lump_lower"] = spec.lump_lower;
  j["lump_upper"] = spec.lump_upper;
  Json bounds = Json::array();
  for (const auto& b : spec.variable_bounds) {
    Json bj;
    bj["variables"] = variables_to_json(b.variables);
    if (b.lower) bj["lower"] = *b.lower;
    if (b.upper) bj["upper"] = *b.upper;
    bounds.push_back(bj);
  }
  j["variable_bounds"] = bounds;
  return j;
}

model::ReformSpec spec_from_json(const Json& doc) {
  Reader r;
  if (!r.object(doc, "", {"schema_version", "name", "objective", "constraints", "rules", "support_overrides",
                          "tied_inputs", "merged_dimensions", "rate_lower", "rate_upper", "lump_lower",
                          "lump_upper", "variable_bounds"})) {
    reject(r);
  }
  if (auto v = r.opt_integer(doc, "", "schema_version"); v && *v != kSchemaVersion) {
    r.fail("/schema_version", "unsupported version " + std::to_string(*v));
  }
  model::ReformSpec spec;
  spec.name = r.string(doc, "", "name", "");
  spec.objective = read_objective(r, doc);

  if (const Json* list = r.field(doc, "", "constraints", false)) {
    if (!list->is_array()) r.fail("/constraints", "expected an array");
    for (std::size_t i = 0; list->is_array() && i < list->size(); ++i) {
      if (auto c = read_constraint(r, (*list)[i], "/constraints/" + std::to_string(i))) {
        spec.constraints.push_back(std::move(*c));
      }
    }
  }

  if (const Json* rules = r.field(doc, "", "rules", false)) {
    if (!rules->is_object()) r.fail("/rules", "expected an object");
    for (auto it = rules->begin(); rules->is_object() && it != rules->end(); ++it) {
      const std::string p = "/rules/" + it.key();
      if (!r.object(*it, p, {"mode", "params", "scale_lower", "scale_upper"})) continue;
      model::RuleSetting s;
      s.mode = r.choice(*it, p, "mode",
                        {{"rate", model::RuleMode::Rate}, {"scale", model::RuleMode::Scale},
                         {"frozen", model::RuleMode::Frozen}},
                        model::RuleMode::Rate, true);
      if (it->contains("params")) s.params = read_params(r, *it, p);
      s.scale_lower = r.number(*it, p, "scale_lower", s.scale_lower);
      s.scale_upper = r.number(*it, p, "scale_upper", s.scale_upper);
      spec.rules[it.key()] = std::move(s);
    }
  }

  if (const Json* list = r.field(doc, "", "support_overrides", false)) {
    if (!list->is_array()) r.fail("/support_overrides", "expected an array");
    for (std::size_t i = 0; list->is_array() && i < list->size(); ++i) {
      const std::string p = "/support_overrides/" + std::to_string(i);
      if (!r.object((*list)[i], p, {"input", "group", "cutoffs"})) continue;
      model::SupportOverride o;
      o.input = r.string((*list)[i], p, "input", "", true);
      o.group = r.string_map((*list)[i], p, "group");
      try {
        o.support = tax::Support(r.numbers((*list)[i], p, "cutoffs"));
      } catch (const Error& e) {
        r.fail(p + "/cutoffs", e.what());
      }
      spec.support_overrides.push_back(std::move(o));
    }
  }

  spec.tied_inputs = r.strings(doc, "", "tied_inputs");
  spec.merged_dimensions = r.strings(doc, "", "merged_dimensions");
  spec.rate_lower = r.number(doc, "", "rate_lower", spec.rate_lower);
  spec.rate_upper = r.number(doc, "", "rate_upper", spec.rate_upper);
  spec.lump_lower = r.number(doc, "", "lump_lower", spec.lump_lower);
  spec.lump_upper = r.number(doc, "", "lump_upper", spec.lump_upper);

  if (const Json* list = r.field(doc, "", "variable_bounds", false)) {
    if (!list->is_array()) r.fail("/variable_bounds", "expected an array");
    for (std::size_t i = 0; list->is_array() && i < list->size(); ++i) {
      const std::string p = "/variable_bounds/" + std::to_string(i);
      if (!r.object((*list)[i], p, {"variables", "lower", "upper"})) continue;
      model::RateBound b;
      b.variables = read_variables(r, (*list)[i], p);
      b.lower = r.opt_number((*list)[i], p, "lower");
      b.upper = r.opt_number((*list)[i], p, "upper");
      spec.variable_bounds.push_back(std::move(b));
    }
  }
  if (!r.issues.empty()) reject(r);
  return spec;
}

model::ReformSpec parse_spec(std::string_view text) { return spec_from_json(parse_json(text, "reform spec")); }

}  // namespace fiscalopt::report
