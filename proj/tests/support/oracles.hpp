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

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "fiscalopt/lp/problem.hpp"

namespace fiscalopt::testing {

/// Minimum of a bounded LP by enumerating every vertex: each choice of n
/// linearly independent active constraints (rows or finite bounds) solved as
/// equalities. nullopt when no vertex is feasible.
inline std::optional<double> vertex_oracle(const lp::LinearProblem& p, double tol = 1e-9) {
  const int n = p.column_count();
  struct Plane {
    Eigen::VectorXd a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& r : p.rows()) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (const auto& e : r.entries) a[e.column] = e.value;
    planes.push_back({a, r.rhs});
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    a[j] = 1.0;
    if (std::isfinite(p.column(j).lower)) planes.push_back({a, p.column(j).lower});
    if (std::isfinite(p.column(j).upper)) planes.push_back({a, p.column(j).upper});
  }
  const int k = static_cast<int>(planes.size());
  std::optional<double> best;
  std::vector<int> pick(n);
  auto feasible = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j) {
      if (x[j] < p.column(j).lower - tol || x[j] > p.column(j).upper + tol) return false;
    }
    for (int i = 0; i < p.row_count(); ++i) {
      const double a = p.activity(i, x);
      const auto& r = p.row(i);
      const double t = tol * std::max(1.0, std::abs(r.rhs));
      if (r.sense != lp::RowSense::GreaterEqual && a > r.rhs + t) return false;
      if (r.sense != lp::RowSense::LessEqual && a < r.rhs - t) return false;
    }
    return true;
  };
  if (n == 0) {
    if (feasible({})) return p.objective_offset;
    return std::nullopt;
  }
  // Iterate over combinations of n planes.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (n <= k) {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      A.row(i) = planes[idx[i]].a.transpose();
      b[i] = planes[idx[i]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.isInvertible()) {
      const Eigen::VectorXd xs = lu.solve(b);
      std::vector<double> x(xs.data(), xs.data() + n);
      if (feasible(x)) {
        const double v = p.objective_value(x);
        if (!best || v < *best) best = v;
      }
    }
    int i = n - 1;
    while (i >= 0 && idx[i] == k - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

}  // namespace fiscalopt::testing
