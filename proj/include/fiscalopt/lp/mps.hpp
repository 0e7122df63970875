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

#include <filesystem>
#include <string>
#include <string_view>

#include "fiscalopt/lp/problem.hpp"

namespace fiscalopt::lp {

/// Fixed-format MPS. Columns and rows are renamed C0000000 / R0000000 in
/// problem order; the original names travel in comment lines so that
/// import_mps restores them. Values are written in shortest round-trip form,
/// which may run past the classic 12-character field.
///
/// Throws ValidationError when two columns or two rows share a name.
std::string export_mps(const LinearProblem& problem);

/// Reads the subset of MPS that export_mps writes (N/L/E/G rows, BV, FX, FR,
/// MI, LO, UP bounds). RANGES entries and integer markers are rejected.
LinearProblem import_mps(std::string_view text);

LinearProblem read_mps(const std::filesystem::path& path);

}  // namespace fiscalopt::lp
