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

#pragma once

#include <string>
#include <string_view>

#include "fiscalopt/model/reform_spec.hpp"
#include "fiscalopt/tax/code.hpp"
#include "json.hpp"

namespace fiscalopt::report {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// JSON documents for tax codes and reform specs. Parsers collect every
/// problem with a JSON-pointer path ("/rules/2/params/0/rates: ...") and
/// throw a single ValidationError. Unknown fields are rejected.
///
/// A code is written as compiled: tax-crediting deductibles appear as the
/// negative bracket rules they compile to.
Json code_to_json(const tax::TaxCode& code);
tax::TaxCode code_from_json(const Json& doc);
tax::TaxCode parse_code(std::string_view text);

Json spec_to_json(const model::ReformSpec& spec);
model::ReformSpec spec_from_json(const Json& doc);
model::ReformSpec parse_spec(std::string_view text);

/// Parses text as JSON, reporting syntax errors as ValidationError.
Json parse_json(std::string_view text, std::string_view what);

}  // namespace fiscalopt::report
