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

#include <functional>
#include <string>

#include "fiscalopt/error.hpp"
#include "fiscalopt/report/documents.hpp"
#include "fiscalopt/scenarios/examples.hpp"

using namespace fiscalopt;
using report::Json;

namespace {

std::vector<std::string> issues(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.issues();
  }
  return {};
}

bool has_issue(const std::vector<std::string>& list, const std::string& needle) {
  for (const auto& s : list) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

Json example1_code_json() { return report::code_to_json(scenarios::example1_code()); }

}  // namespace

TEST_CASE("codes round trip through json") {
  for (const auto& code : {scenarios::example1_code(), scenarios::example2_code(), scenarios::example3_code(),
                           scenarios::example4_code()}) {
    const Json once = report::code_to_json(code);
    const auto parsed = report::code_from_json(once);
    CHECK(report::code_to_json(parsed) == once);
    CHECK(parsed.rules().size() == code.rules().size());
    // The parsed code taxes like the original.
    if (!code.dimensions().empty()) continue;
    for (double x : {0.0, 17000.0, 52000.0, 120000.0}) {
      const tax::InputVector in{{"income_before_tax", x}, {"household_income", x}, {"children", 2}};
      CHECK(tax::evaluate_code(parsed, in, parsed.assign({})) == tax::evaluate_code(code, in, code.assign({})));
    }
  }
}

TEST_CASE("specs round trip through json") {
  for (const auto& spec : {scenarios::example1_reform1(), scenarios::example1_reform2(),
                           scenarios::example1_three_rates(), scenarios::example1_three_brackets(),
                           scenarios::universal_cut_with_revenue_gain(), scenarios::example2_reform1(),
                           scenarios::example2_reform2(), scenarios::example3_reform1(),
                           scenarios::example4_reform(), scenarios::example_structure()}) {
    const Json once = report::spec_to_json(spec);
    CHECK(report::spec_to_json(report::spec_from_json(once)) == once);
    CHECK(report::spec_to_json(report::parse_spec(once.dump())) == once);
  }
}

TEST_CASE("unknown fields are rejected with their path") {
  Json doc = example1_code_json();
  doc["colour"] = "red";
  doc["rules"][0]["params"][0]["slope"] = 1;
  const auto list = issues([&] { report::code_from_json(doc); });
  CHECK(has_issue(list, "/colour: unknown field"));
  CHECK(has_issue(list, "/rules/0/params/0/slope: unknown field"));
}

TEST_CASE("type errors name the field") {
  Json doc = example1_code_json();
  doc["rules"][0]["params"][0]["rates"] = "high";
  doc["rules"][0].erase("id");
  const auto list = issues([&] { report::code_from_json(doc); });
  CHECK(has_issue(list, "/rules/0/params/0/rates: expected an array of numbers"));
  CHECK(has_issue(list, "/rules/0/id: required"));
}

TEST_CASE("rule checks attach to the rule path") {
  Json doc = example1_code_json();
  doc["rules"][0]["params"][0]["rates"] = {0.1, 0.2};  // five brackets
  const auto list = issues([&] { report::code_from_json(doc); });
  REQUIRE_FALSE(list.empty());
  CHECK(has_issue(list, "/rules/0"));
}

TEST_CASE("spec errors name the field") {
  Json spec = report::spec_to_json(scenarios::example1_reform1());
  spec["constraints"][0]["epsilon"] = "five percent";
  spec["constraints"][1]["kind"] = "wishful";
  spec["objective"]["kind"] = "maximize_happiness";
  const auto list = issues([&] { report::spec_from_json(spec); });
  CHECK(has_issue(list, "/constraints/0/epsilon"));
  CHECK(has_issue(list, "/constraints/1/kind"));
  CHECK(has_issue(list, "/objective/kind"));
}

TEST_CASE("schema version is checked") {
  Json spec = report::spec_to_json(scenarios::example1_reform1());
  spec["schema_version"] = 99;
  CHECK(has_issue(issues([&] { report::spec_from_json(spec); }), "/schema_version"));
}

TEST_CASE("malformed json is a validation error") {
  CHECK_THROWS_AS(report::parse_code("{"), ValidationError);
  CHECK_THROWS_AS(report::parse_spec("[1, 2"), ValidationError);
  CHECK_THROWS_AS(report::parse_json("nope", "thing"), ValidationError);
}
