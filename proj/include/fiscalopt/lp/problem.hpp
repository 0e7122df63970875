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

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace fiscalopt::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct Entry {
  int column = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// entries . x  (sense)  rhs
struct Row {
  std::string name;
  std::vector<Entry> entries;  // sorted by column, no zeros, no repeats
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;

  double lower() const { return sense == RowSense::LessEqual ? -kInf : rhs; }
  double upper() const { return sense == RowSense::GreaterEqual ? kInf : rhs; }

  friend bool operator==(const Row&, const Row&) = default;
};

struct Column {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
  bool binary = false;

  friend bool operator==(const Column&, const Column&) = default;
};

/// minimize  cost . x + objective_offset
/// subject to rows, lower <= x <= upper, binary columns in {0, 1}.
class LinearProblem {
 public:
  std::string name = "fiscalopt";
  double objective_offset = 0.0;

  int add_column(std::string name, double lower, double upper, double cost = 0.0,
                 bool binary = false);
  /// Sorts entries, merges repeated columns and drops zeros.
  int add_row(std::string name, std::vector<Entry> entries, RowSense sense, double rhs);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::vector<Column>& mutable_columns() { return columns_; }
  Column& column(int j) { return columns_.at(static_cast<std::size_t>(j)); }
  const Column& column(int j) const { return columns_.at(static_cast<std::size_t>(j)); }
  const Row& row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }

  int column_count() const { return static_cast<int>(columns_.size()); }
  int row_count() const { return static_cast<int>(rows_.size()); }
  std::size_t nonzeros() const;
  bool has_binaries() const;

  /// Copy without the listed rows (indices into rows()).
  LinearProblem without_rows(const std::vector<int>& drop) const;

  /// Throws ValidationError listing every inconsistency.
  void validate() const;

  double objective_value(const std::vector<double>& x) const;
  double activity(int row, const std::vector<double>& x) const;

  friend bool operator==(const LinearProblem&, const LinearProblem&) = default;

 private:
  std::vector<Column> columns_;
  std::vector<Row> rows_;
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status status);

/// Simplex basis in implicit form: the basic structural columns and the
/// rows held at a bound ("tight"). Both lists have the same length.
struct Basis {
  std::vector<int> basic_columns;
  std::vector<int> tight_rows;
  std::vector<std::int8_t> tight_at_upper;    // per tight row
  std::vector<std::int8_t> column_at_upper;   // per column, meaningful when nonbasic

  bool empty() const { return column_at_upper.empty(); }
};

struct SolveStats {
  long iterations = 0;
  long nodes = 0;
  double seconds = 0.0;
};

struct Solution {
  Status status = Status::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> row_activity;
  /// rhs - activity for <= rows, activity - rhs for >= rows, minus the
  /// absolute residual for equalities; negative means violated.
  std::vector<double> row_slack;
  /// Row duals and column reduced costs of the final LP (empty for MILP).
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  /// Infeasible: rows whose joint removal makes the problem feasible.
  std::vector<int> conflict;
  /// MILP: best proven lower bound on the objective.
  double best_bound = -kInf;
  Basis basis;
  SolveStats stats;
  std::string message;
};

enum class MatrixStorage { Auto, Dense, Sparse };

struct SolverOptions {
  long iteration_limit = 1'000'000;
  long node_limit = 100'000;
  double time_limit_seconds = 0.0;  // 0: none
  double feasibility_tolerance = 1e-6;
  double integrality_tolerance = 1e-6;
  double gap_tolerance = 1e-6;
  int bland_after = 50;
  bool compute_conflict = true;
  MatrixStorage storage = MatrixStorage::Auto;
  /// Below this many nonzeros the constraint matrix is held dense.
  std::size_t dense_nonzero_limit = 10'000;
};

}  // namespace fiscalopt::lp
