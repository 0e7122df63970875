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

#include <stdexcept>
#include <string>
#include <vector>

namespace fiscalopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric argument (negative income, non-finite value, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A document or object failed structural validation. Carries every issue
/// found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  explicit ValidationError(const std::string& issue)
      : ValidationError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& issue : issues) {
      if (!out.empty()) out += "; ";
      out += issue;
    }
    return out;
  }
  std::vector<std::string> issues_;
};

/// A reform specification could not be lowered to a linear problem.
class CompileError : public Error {
 public:
  using Error::Error;
};

/// A lexicographic objective was compiled without the optimum of its first
/// stage.
class StagedSolveError : public CompileError {
 public:
  using CompileError::CompileError;
};

/// Lookup of an unknown rule, taxpayer, variable or stored object.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// I/O failure (unreadable file, unwritable destination).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fiscalopt
