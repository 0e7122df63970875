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

#include "fiscalopt/io/synthetic.hpp"

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fiscalopt/error.hpp"
#include "json.hpp"

namespace fiscalopt::io {

namespace {

using Engine = boost::random::mt19937_64;

std::vector<std::string> check(const SyntheticConfig& c) {
  std::vector<std::string> issues;
  if (!c.seed) issues.push_back("seed is required");
  if (c.taxpayers < 0 || c.households < 0) issues.push_back("counts must be non-negative");
  if (c.households > c.taxpayers || c.taxpayers > 2 * c.households) {
    issues.push_back("households must number between taxpayers/2 and taxpayers");
  }
  if (!(c.weight > 0.0)) issues.push_back("weight must be positive");
  for (const auto& [name, shares] : c.characteristics) {
    double total = 0.0;
    for (const auto& [value, share] : shares) {
      if (!(share >= 0.0)) issues.push_back("characteristic " + name + ": negative share");
      total += share;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      issues.push_back("characteristic " + name + ": shares sum to " + std::to_string(total));
    }
  }
  auto marginal = [&](const std::string& name, const Marginal& m) {
    if (!(m.zero_share >= 0.0 && m.zero_share <= 1.0)) issues.push_back(name + ": zero_share outside [0, 1]");
    if (!(m.min <= m.max) || m.min < 0.0) issues.push_back(name + ": clip range invalid");
    switch (m.kind) {
      case Marginal::Kind::Lognormal:
        if (!(m.median > 0.0 && m.mean >= m.median)) issues.push_back(name + ": lognormal needs mean >= median > 0");
        break;
      case Marginal::Kind::Uniform:
        if (!(m.low <= m.high)) issues.push_back(name + ": uniform needs low <= high");
        break;
      case Marginal::Kind::Poisson:
        if (!(m.mean > 0.0)) issues.push_back(name + ": poisson needs a positive mean");
        break;
      case Marginal::Kind::Constant:
        break;
    }
  };
  for (const auto& [n, m] : c.personal) marginal(n, m);
  for (const auto& [n, m] : c.household) {
    marginal(n, m);
    if (!m.unless.empty() && (!c.household.count(m.unless) || m.unless >= n)) {
      issues.push_back(n + ": unless must name a household input drawn earlier (sorted by name)");
    }
  }
  for (const auto& [name, inputs] : c.indicators) {
    for (const auto& input : inputs) {
      if (!c.household.count(input)) issues.push_back("indicator " + name + ": unknown household input " + input);
    }
  }
  return issues;
}

double draw(const Marginal& m, Engine& rng) {
  if (m.zero_share > 0.0 && boost::random::bernoulli_distribution<double>(m.zero_share)(rng)) return 0.0;
  double x = 0.0;
  switch (m.kind) {
    case Marginal::Kind::Constant:
      x = m.value;
      break;
    case Marginal::Kind::Lognormal: {
      // median = e^mu, mean = e^(mu + sigma^2 / 2)
      const double mu = std::log(m.median);
      const double sigma = std::sqrt(2.0 * std::log(m.mean / m.median));
      x = std::exp(mu + sigma * boost::random::normal_distribution<double>(0.0, 1.0)(rng));
      break;
    }
    case Marginal::Kind::Uniform:
      x = boost::random::uniform_real_distribution<double>(m.low, m.high)(rng);
      break;
    case Marginal::Kind::Poisson:
      x = boost::random::poisson_distribution<int, double>(m.mean)(rng);
      break;
  }
  x = std::clamp(x, m.min, m.max);
  return m.round ? std::round(x) : x;
}

}  // namespace

Population generate_population(const SyntheticConfig& config, const tax::TaxCode* code) {
  const auto issues = check(config);
  if (!issues.empty()) throw ValidationError(issues);
  Engine rng(*config.seed);

  // Characteristic samplers, in name order for a stable draw sequence.
  std::vector<std::pair<std::string, std::vector<std::string>>> names;
  std::vector<boost::random::discrete_distribution<int, double>> samplers;
  for (const auto& [name, shares] : config.characteristics) {
    std::vector<std::string> values;
    std::vector<double> weights;
    for (const auto& [v, s] : shares) {
      values.push_back(v);
      weights.push_back(s);
    }
    names.emplace_back(name, std::move(values));
    samplers.emplace_back(weights.begin(), weights.end());
  }

  const int couples = config.taxpayers - config.households;
  std::vector<Taxpayer> taxpayers;
  taxpayers.reserve(static_cast<std::size_t>(config.taxpayers));
  for (int h = 0; h < config.households; ++h) {
    const bool couple = h < couples;
    char hid[16];
    std::snprintf(hid, sizeof hid, "h%06d", h);
    const std::size_t first = taxpayers.size();
    for (int m = 0; m < (couple ? 2 : 1); ++m) {
      Taxpayer t;
      t.id = std::string(hid) + (couple ? (m == 0 ? "a" : "b") : "");
      t.household_id = couple ? hid : "";
      t.weight = config.weight;
      for (const auto& [input, marginal] : config.personal) t.inputs[input] = draw(marginal, rng);
      for (std::size_t k = 0; k < names.size(); ++k) {
        t.characteristics[names[k].first] = names[k].second[static_cast<std::size_t>(samplers[k](rng))];
      }
      t.characteristics["fiscal_partner"] = couple ? "yes" : "no";
      taxpayers.push_back(std::move(t));
    }
    for (const auto& [input, marginal] : config.household) {
      double v = 0.0;
      if (marginal.unless.empty() || !(taxpayers[first].inputs[marginal.unless] > 0.0)) v = draw(marginal, rng);
      for (std::size_t i = first; i < taxpayers.size(); ++i) taxpayers[i].inputs[input] = i == first ? v : 0.0;
    }
    for (const auto& [name, inputs] : config.indicators) {
      bool any = false;
      for (const auto& input : inputs) any = any || taxpayers[first].inputs[input] > 0.0;
      for (std::size_t i = first; i < taxpayers.size(); ++i) taxpayers[i].characteristics[name] = any ? "yes" : "no";
    }
    double total = 0.0;
    for (std::size_t i = first; i < taxpayers.size(); ++i) {
      auto it = taxpayers[i].inputs.find(config.income_input);
      if (it != taxpayers[i].inputs.end()) total += it->second;
    }
    if (config.personal.count(config.income_input)) {
      for (std::size_t i = first; i < taxpayers.size(); ++i) {
        taxpayers[i].inputs[config.household_income_input] = total;
      }
    }
    if (couple) {
      const double a = taxpayers[first].inputs[config.income_input];
      const double b = taxpayers[first + 1].inputs[config.income_input];
      const bool a_lowest = a <= b;
      taxpayers[first].characteristics["partner_role"] = a_lowest ? "lowest_earner" : "highest_earner";
      taxpayers[first + 1].characteristics["partner_role"] = a_lowest ? "highest_earner" : "lowest_earner";
    } else {
      taxpayers[first].characteristics["partner_role"] = "single";
    }
  }
  if (code) {
    for (auto& t : taxpayers) t.current_tax = tax::evaluate_code(*code, t.profile());
  }
  std::map<std::string, std::string> metadata{{"generator", "synthetic"},
                                              {"seed", std::to_string(*config.seed)}};
  return Population(std::move(taxpayers), std::move(metadata));
}

SyntheticConfig parse_synthetic_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("generator config: ") + e.what());
  }
  std::vector<std::string> issues;
  SyntheticConfig c;
  auto marginal = [&](const std::string& path, const nlohmann::json& j) {
    Marginal m;
    const std::string kind = j.value("kind", "constant");
    if (kind == "constant") m.kind = Marginal::Kind::Constant;
    else if (kind == "lognormal") m.kind = Marginal::Kind::Lognormal;
    else if (kind == "uniform") m.kind = Marginal::Kind::Uniform;
    else if (kind == "poisson") m.kind = Marginal::Kind::Poisson;
    else issues.push_back(path + "/kind: unknown distribution '" + kind + "'");
    m.zero_share = j.value("zero_share", 0.0);
    m.value = j.value("value", 0.0);
    m.mean = j.value("mean", 0.0);
    m.median = j.value("median", 0.0);
    m.low = j.value("low", 0.0);
    m.high = j.value("high", 0.0);
    m.min = j.value("min", 0.0);
    if (j.contains("max")) m.max = j["max"].get<double>();
    m.round = j.value("round", true);
    m.unless = j.value("unless", "");
    return m;
  };
  try {
    c.taxpayers = doc.at("taxpayers").get<int>();
    c.households = doc.value("households", c.taxpayers);
    c.weight = doc.value("weight", 1.0);
    c.income_input = doc.value("income_input", c.income_input);
    c.household_income_input = doc.value("household_income_input", c.household_income_input);
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    const nlohmann::json personal = doc.value("personal", nlohmann::json::object());
    for (const auto& [k, v] : personal.items()) {
      c.personal[k] = marginal("/personal/" + k, v);
    }
    const nlohmann::json household = doc.value("household", nlohmann::json::object());
    for (const auto& [k, v] : household.items()) {
      c.household[k] = marginal("/household/" + k, v);
    }
    const nlohmann::json indicators = doc.value("indicators", nlohmann::json::object());
    for (const auto& [k, v] : indicators.items()) {
      c.indicators[k] = v.get<std::vector<std::string>>();
    }
    const nlohmann::json characteristics = doc.value("characteristics", nlohmann::json::object());
    for (const auto& [k, v] : characteristics.items()) {
      for (const auto& [value, share] : v.items()) c.characteristics[k][value] = share.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    issues.push_back(std::string("generator config: ") + e.what());
  }
  if (!issues.empty()) throw ValidationError(issues);
  return c;
}

std::string synthetic_config_to_json(const SyntheticConfig& c) {
  auto marginal = [](const Marginal& m) {
    static const char* kinds[] = {"constant", "lognormal", "uniform", "poisson"};
    nlohmann::json j{{"kind", kinds[static_cast<int>(m.kind)]}};
    if (m.zero_share != 0.0) j["zero_share"] = m.zero_share;
    switch (m.kind) {
      case Marginal::Kind::Constant: j["value"] = m.value; break;
      case Marginal::Kind::Lognormal: j["mean"] = m.mean; j["median"] = m.median; break;
      case Marginal::Kind::Uniform: j["low"] = m.low; j["high"] = m.high; break;
      case Marginal::Kind::Poisson: j["mean"] = m.mean; break;
    }
    if (m.min != 0.0) j["min"] = m.min;
    if (std::isfinite(m.max)) j["max"] = m.max;
    if (!m.round) j["round"] = false;
    if (!m.unless.empty()) j["unless"] = m.unless;
    return j;
  };
  nlohmann::json j;
  j["taxpayers"] = c.taxpayers;
  j["households"] = c.households;
  j["weight"] = c.weight;
  j["income_input"] = c.income_input;
  j["household_income_input"] = c.household_income_input;
  if (c.seed) j["seed"] = *c.seed;
  j["personal"] = nlohmann::json::object();
  for (const auto& [k, m] : c.personal) j["personal"][k] = marginal(m);
  j["household"] = nlohmann::json::object();
  for (const auto& [k, m] : c.household) j["household"][k] = marginal(m);
  j["characteristics"] = c.characteristics;
  j["indicators"] = c.indicators;
  return j.dump(2) + "\n";
}

}  // namespace fiscalopt::io
