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

// Writes the bundled scenario fixtures into a directory.

#include <filesystem>
#include <iostream>

#include "fiscalopt/io/atomic_file.hpp"
#include "fiscalopt/scenarios/examples.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: write_scenarios <dir>\n";
    return 64;
  }
  const std::filesystem::path dir = argv[1];
  try {
    for (const auto& [path, content] : fiscalopt::scenarios::scenario_fixtures()) {
      std::filesystem::create_directories((dir / path).parent_path());
      fiscalopt::io::write_file_atomic(dir / path, content);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 66;
  }
  return 0;
}
