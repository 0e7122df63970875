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

#include "simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fiscalopt/error.hpp"
#include "fiscalopt/lp/solver.hpp"

namespace fiscalopt::lp::detail {

namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kSnap = 1e-9;

double power_of_two(double v) { return std::exp2(std::round(std::log2(v))); }

using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

struct SimplexSolver::Impl {
  const LinearProblem* problem = nullptr;
  SolverOptions options;
  int m = 0;
  int n = 0;
  // Scaled matrix: a_ij * R_i * C_j, both row- and column-major.
  std::vector<int> row_start, row_col;
  std::vector<double> row_val;
  std::vector<int> col_start, col_row;
  std::vector<double> col_val;
  bool dense = false;
  DenseMatrix matrix;
  std::vector<double> row_scale, col_scale;
  double cost_scale = 1.0;
  std::vector<double> cost, row_lo, row_hi;

  void build();
  void multiply(const std::vector<double>& x, std::vector<double>& out) const;
  void add_column(int j, double a, std::vector<double>& out) const;
  void add_row_transposed(int i, double y, std::vector<double>& out) const;
  double coefficient(int i, int j) const;
};

void SimplexSolver::Impl::build() {
  const auto& rows = problem->rows();
  m = problem->row_count();
  n = problem->column_count();
  row_start.assign(1, 0);
  for (const auto& r : rows) {
    for (const auto& e : r.entries) {
      row_col.push_back(e.column);
      row_val.push_back(e.value);
    }
    row_start.push_back(static_cast<int>(row_col.size()));
  }

  // Geometric-mean scaling, rounded to powers of two so it is exact.
  row_scale.assign(m, 1.0);
  col_scale.assign(n, 1.0);
  for (int pass = 0; pass < 4; ++pass) {
    for (int i = 0; i < m; ++i) {
      double lo = kInf, hi = 0.0;
      for (int k = row_start[i]; k < row_start[i + 1]; ++k) {
        const double a = std::abs(row_val[k]) * col_scale[row_col[k]];
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      if (hi > 0.0) row_scale[i] = 1.0 / std::sqrt(lo * hi);
    }
    std::vector<double> lo(n, kInf), hi(n, 0.0);
    for (int i = 0; i < m; ++i) {
      for (int k = row_start[i]; k < row_start[i + 1]; ++k) {
        const double a = std::abs(row_val[k]) * row_scale[i];
        lo[row_col[k]] = std::min(lo[row_col[k]], a);
        hi[row_col[k]] = std::max(hi[row_col[k]], a);
      }
    }
    for (int j = 0; j < n; ++j) {
      if (hi[j] > 0.0) col_scale[j] = 1.0 / std::sqrt(lo[j] * hi[j]);
    }
  }
  for (auto& s : row_scale) s = power_of_two(s);
  for (auto& s : col_scale) s = power_of_two(s);

  for (int i = 0; i < m; ++i) {
    for (int k = row_start[i]; k < row_start[i + 1]; ++k) {
      row_val[k] *= row_scale[i] * col_scale[row_col[k]];
    }
  }
  std::vector<int> count(n + 1, 0);
  for (int c : row_col) ++count[c + 1];
  col_start.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) col_start[j + 1] = col_start[j] + count[j + 1];
  col_row.resize(row_col.size());
  col_val.resize(row_col.size());
  std::vector<int> fill(col_start.begin(), col_start.end() - 1);
  for (int i = 0; i < m; ++i) {
    for (int k = row_start[i]; k < row_start[i + 1]; ++k) {
      const int at = fill[row_col[k]]++;
      col_row[at] = i;
      col_val[at] = row_val[k];
    }
  }

  const std::size_t nnz = row_col.size();
  dense = options.storage == MatrixStorage::Dense ||
          (options.storage == MatrixStorage::Auto && nnz < options.dense_nonzero_limit);
  if (dense) {
    matrix = DenseMatrix::Zero(m, n);
    for (int i = 0; i < m; ++i) {
      for (int k = row_start[i]; k < row_start[i + 1]; ++k) matrix(i, row_col[k]) = row_val[k];
    }
  }

  cost.assign(n, 0.0);
  double cmax = 0.0;
  for (int j = 0; j < n; ++j) {
    cost[j] = problem->column(j).cost * col_scale[j];
    cmax = std::max(cmax, std::abs(cost[j]));
  }
  cost_scale = cmax > 0.0 ? power_of_two(cmax) : 1.0;
  for (auto& c : cost) c /= cost_scale;

  row_lo.resize(m);
  row_hi.resize(m);
  for (int i = 0; i < m; ++i) {
    row_lo[i] = rows[i].lower() * row_scale[i];
    row_hi[i] = rows[i].upper() * row_scale[i];
  }
}

void SimplexSolver::Impl::multiply(const std::vector<double>& x, std::vector<double>& out) const {
  out.assign(m, 0.0);
  if (dense) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    Eigen::Map<Eigen::VectorXd> ov(out.data(), m);
    ov.noalias() = matrix * xv;
    return;
  }
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int k = row_start[i]; k < row_start[i + 1]; ++k) s += row_val[k] * x[row_col[k]];
    out[i] = s;
  }
}

void SimplexSolver::Impl::add_column(int j, double a, std::vector<double>& out) const {
  if (a == 0.0) return;
  if (dense) {
    Eigen::Map<Eigen::VectorXd> ov(out.data(), m);
    ov += a * matrix.col(j);
    return;
  }
  for (int k = col_start[j]; k < col_start[j + 1]; ++k) out[col_row[k]] += a * col_val[k];
}

void SimplexSolver::Impl::add_row_transposed(int i, double y, std::vector<double>& out) const {
  if (y == 0.0) return;
  if (dense) {
    Eigen::Map<Eigen::RowVectorXd> ov(out.data(), n);
    ov += y * matrix.row(i);
    return;
  }
  for (int k = row_start[i]; k < row_start[i + 1]; ++k) out[row_col[k]] += y * row_val[k];
}

double SimplexSolver::Impl::coefficient(int i, int j) const {
  if (dense) return matrix(i, j);
  const auto first = row_col.begin() + row_start[i];
  const auto last = row_col.begin() + row_start[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return it != last && *it == j ? row_val[it - row_col.begin()] : 0.0;
}

SimplexSolver::SimplexSolver(const LinearProblem& problem, const SolverOptions& options)
    : impl_(std::make_unique<Impl>()) {
  impl_->problem = &problem;
  impl_->options = options;
  impl_->build();
}

SimplexSolver::~SimplexSolver() = default;

bool SimplexSolver::dense() const { return impl_->dense; }

namespace {

/// Mutable state of one solve.
struct State {
  const SimplexSolver::Impl& M;
  std::vector<double> xl, xu;
  std::vector<int> S, T;
  std::vector<std::int8_t> T_up;
  std::vector<std::int8_t> at_up;
  std::vector<int> pos_S, pos_T;
  std::vector<double> x, r;
  Eigen::FullPivLU<Eigen::MatrixXd> lu;

  explicit State(const SimplexSolver::Impl& model) : M(model) {}

  void reset_cold() {
    S.clear();
    T.clear();
    T_up.clear();
    at_up.assign(M.n, 0);
    for (int j = 0; j < M.n; ++j) at_up[j] = std::isinf(xl[j]) && !std::isinf(xu[j]);
  }

  void index() {
    pos_S.assign(M.n, -1);
    pos_T.assign(M.m, -1);
    for (std::size_t s = 0; s < S.size(); ++s) pos_S[S[s]] = static_cast<int>(s);
    for (std::size_t t = 0; t < T.size(); ++t) pos_T[T[t]] = static_cast<int>(t);
  }

  double nonbasic_value(int j) const {
    const bool lo_inf = std::isinf(xl[j]);
    const bool hi_inf = std::isinf(xu[j]);
    if (lo_inf && hi_inf) return 0.0;
    if (lo_inf) return xu[j];
    if (hi_inf) return xl[j];
    return at_up[j] ? xu[j] : xl[j];
  }

  double tight_value(int t) const { return T_up[t] ? M.row_hi[T[t]] : M.row_lo[T[t]]; }

  /// Factorizes A[T, S] and recomputes x and r. False if singular.
  bool compute_primal() {
    const int k = static_cast<int>(S.size());
    x.assign(M.n, 0.0);
    for (int j = 0; j < M.n; ++j) {
      if (pos_S[j] < 0) x[j] = nonbasic_value(j);
    }
    M.multiply(x, r);
    if (k == 0) return true;
    Eigen::MatrixXd B(k, k);
    for (int t = 0; t < k; ++t) {
      for (int s = 0; s < k; ++s) B(t, s) = M.coefficient(T[t], S[s]);
    }
    lu.compute(B);
    if (!lu.isInvertible()) return false;
    Eigen::VectorXd rhs(k);
    for (int t = 0; t < k; ++t) rhs[t] = tight_value(t) - r[T[t]];
    const Eigen::VectorXd xs = lu.solve(rhs);
    for (int s = 0; s < k; ++s) {
      x[S[s]] = xs[s];
      M.add_column(S[s], xs[s], r);
    }
    for (int t = 0; t < k; ++t) r[T[t]] = tight_value(t);
    return true;
  }
};

enum class Bound : std::int8_t { Lower, Upper };

struct Candidate {
  bool is_row = false;
  int index = -1;
  int dir = 0;
};

}  // namespace

LpRun SimplexSolver::solve(const std::vector<double>& lower, const std::vector<double>& upper,
                           const Basis* warm, long iteration_budget,
                           std::optional<Clock::time_point> deadline) const {
  const Impl& M = *impl_;
  const int m = M.m;
  const int n = M.n;
  State st(M);
  st.xl.resize(n);
  st.xu.resize(n);
  for (int j = 0; j < n; ++j) {
    st.xl[j] = lower[j] / M.col_scale[j];
    st.xu[j] = upper[j] / M.col_scale[j];
  }
  if (warm && !warm->empty() && static_cast<int>(warm->column_at_upper.size()) == n &&
      warm->basic_columns.size() == warm->tight_rows.size()) {
    st.S = warm->basic_columns;
    st.T = warm->tight_rows;
    st.T_up = warm->tight_at_upper;
    st.at_up = warm->column_at_upper;
    for (int j = 0; j < n; ++j) {
      if (std::isinf(st.xl[j]) && !std::isinf(st.xu[j])) st.at_up[j] = 1;
      if (std::isinf(st.xu[j])) st.at_up[j] = 0;
    }
    // A tight row whose bound is infinite cannot stay tight.
    bool ok = true;
    for (std::size_t t = 0; t < st.T.size(); ++t) {
      if (std::isinf(st.tight_value(static_cast<int>(t)))) ok = false;
    }
    if (!ok) st.reset_cold();
  } else {
    st.reset_cold();
  }
  st.index();

  LpRun run;
  std::vector<double> cx(n), cr(m), y(m), g(n), dr(m);
  std::vector<char> banned_col(n, 0), banned_row(m, 0);
  long stall = 0;
  int resets = 0;
  double last_obj = kInf;
  int last_phase = 0;

  auto finish = [&](Status status, std::string message = {}) {
    run.status = status;
    run.message = std::move(message);
    run.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j) run.x[j] = st.x[j] * M.col_scale[j];
    run.objective = M.problem->objective_value(run.x);
    run.basis.basic_columns = st.S;
    run.basis.tight_rows = st.T;
    run.basis.tight_at_upper = st.T_up;
    run.basis.column_at_upper = st.at_up;
    return run;
  };

  for (;;) {
    if (run.iterations >= iteration_budget) {
      st.compute_primal();
      return finish(Status::IterationLimit, "iteration limit reached");
    }
    if (deadline && Clock::now() > *deadline) {
      st.compute_primal();
      return finish(Status::IterationLimit, "time limit reached");
    }
    if (!st.compute_primal()) {
      if (++resets > 3) return finish(Status::IterationLimit, "numerical trouble: singular basis");
      st.reset_cold();
      st.index();
      continue;
    }
    const int k = static_cast<int>(st.S.size());

    // Phase detection and costs.
    std::fill(cr.begin(), cr.end(), 0.0);
    std::fill(cx.begin(), cx.end(), 0.0);
    double infeasibility = 0.0;
    for (int j : st.S) {
      if (st.x[j] < st.xl[j] - kPrimalTol) {
        cx[j] = -1.0;
        infeasibility += st.xl[j] - st.x[j];
      } else if (st.x[j] > st.xu[j] + kPrimalTol) {
        cx[j] = 1.0;
        infeasibility += st.x[j] - st.xu[j];
      }
    }
    for (int i = 0; i < m; ++i) {
      if (st.pos_T[i] >= 0) continue;
      if (st.r[i] < M.row_lo[i] - kPrimalTol) {
        cr[i] = -1.0;
        infeasibility += M.row_lo[i] - st.r[i];
      } else if (st.r[i] > M.row_hi[i] + kPrimalTol) {
        cr[i] = 1.0;
        infeasibility += st.r[i] - M.row_hi[i];
      }
    }
    const int phase = infeasibility > 0.0 ? 1 : 2;
    if (phase == 2) cx = M.cost;
    double obj = infeasibility;
    if (phase == 2) {
      obj = 0.0;
      for (int j = 0; j < n; ++j) obj += M.cost[j] * st.x[j];
    }
    if (phase != last_phase) {
      stall = 0;
    } else if (obj < last_obj - 1e-12 * std::max(1.0, std::abs(last_obj))) {
      stall = 0;
    } else {
      ++stall;
    }
    last_phase = phase;
    last_obj = obj;
    const bool bland = stall > M.options.bland_after;

    // Duals: y_i = -cr_i off T, A[T,S]^T y_T = c_S - A[~T,S]^T y_~T on T.
    std::fill(y.begin(), y.end(), 0.0);
    std::fill(g.begin(), g.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      if (cr[i] != 0.0) {
        y[i] = -cr[i];
        M.add_row_transposed(i, y[i], g);
      }
    }
    if (k > 0) {
      Eigen::VectorXd rhs(k);
      for (int s = 0; s < k; ++s) rhs[s] = cx[st.S[s]] - g[st.S[s]];
      const Eigen::VectorXd yt = st.lu.transpose().solve(rhs);
      for (int t = 0; t < k; ++t) {
        y[st.T[t]] = yt[t];
        M.add_row_transposed(st.T[t], yt[t], g);
      }
    }

    // Pricing.
    Candidate enter;
    double best = 0.0;
    for (int j = 0; j < n && !(bland && enter.index >= 0); ++j) {
      if (st.pos_S[j] >= 0 || banned_col[j] || st.xl[j] == st.xu[j]) continue;
      const double d = cx[j] - g[j];
      int dir = 0;
      if (std::isinf(st.xl[j]) && std::isinf(st.xu[j])) {
        if (std::abs(d) > kDualTol) dir = d < 0 ? 1 : -1;
      } else if (st.at_up[j]) {
        if (d > kDualTol) dir = -1;
      } else if (d < -kDualTol) {
        dir = 1;
      }
      if (dir != 0 && (bland || std::abs(d) > best)) {
        best = std::abs(d);
        enter = {false, j, dir};
      }
    }
    const bool have_column = enter.index >= 0;
    for (int t = 0; t < k && !(bland && have_column); ++t) {
      const int p = st.T[t];
      if (banned_row[p] || M.row_lo[p] == M.row_hi[p]) continue;
      const double d = cr[p] + y[p];
      int dir = 0;
      if (st.T_up[t]) {
        if (d > kDualTol) dir = -1;
      } else if (d < -kDualTol) {
        dir = 1;
      }
      if (dir == 0) continue;
      if (bland ? (!enter.is_row || p < enter.index) : std::abs(d) > best) {
        best = std::abs(d);
        enter = {true, p, dir};
      }
    }

    if (enter.index < 0) {
      if (phase == 2) return finish(Status::Optimal);
      // Phase-one optimum with positive infeasibility.
      for (int i = 0; i < m; ++i) {
        if (std::abs(y[i]) > kDualTol) run.certificate.push_back(i);
      }
      return finish(Status::Infeasible, "no point satisfies every row");
    }

    // Direction of the basic variables per unit step.
    Eigen::VectorXd dxs;
    if (k > 0) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
      if (enter.is_row) {
        rhs[st.pos_T[enter.index]] = enter.dir;
      } else {
        for (int t = 0; t < k; ++t) rhs[t] = -enter.dir * M.coefficient(st.T[t], enter.index);
      }
      dxs = st.lu.solve(rhs);
    }
    std::fill(dr.begin(), dr.end(), 0.0);
    if (!enter.is_row) M.add_column(enter.index, enter.dir, dr);
    for (int s = 0; s < k; ++s) M.add_column(st.S[s], dxs[s], dr);

    // Harris two-pass ratio test; Bland mode takes the smallest ratio and
    // breaks ties by index.
    struct Block {
      bool is_row;
      int index;
      double ratio;
      double pivot;
      Bound bound;
    };
    std::vector<Block> blocks;
    auto consider = [&](bool is_row, int index, double v, double lo, double hi, double delta) {
      if (std::abs(delta) <= kPivotTol) return;
      double dist;
      Bound b;
      if (delta > 0) {
        if (v < lo - kPrimalTol) {
          dist = lo - v;
          b = Bound::Lower;
        } else if (v > hi + kPrimalTol || std::isinf(hi)) {
          return;
        } else {
          dist = std::max(hi - v, 0.0);
          b = Bound::Upper;
        }
      } else {
        if (v > hi + kPrimalTol) {
          dist = v - hi;
          b = Bound::Upper;
        } else if (v < lo - kPrimalTol || std::isinf(lo)) {
          return;
        } else {
          dist = std::max(v - lo, 0.0);
          b = Bound::Lower;
        }
      }
      blocks.push_back({is_row, index, dist / std::abs(delta), std::abs(delta), b});
    };
    for (int s = 0; s < k; ++s) {
      const int j = st.S[s];
      consider(false, j, st.x[j], st.xl[j], st.xu[j], dxs[s]);
    }
    for (int i = 0; i < m; ++i) {
      if (st.pos_T[i] >= 0) continue;
      consider(true, i, st.r[i], M.row_lo[i], M.row_hi[i], dr[i]);
    }
    const double own_range = enter.is_row ? M.row_hi[enter.index] - M.row_lo[enter.index]
                                          : st.xu[enter.index] - st.xl[enter.index];

    const Block* chosen = nullptr;
    if (!blocks.empty()) {
      if (bland) {
        for (const auto& b : blocks) {
          const int key = b.is_row ? n + b.index : b.index;
          if (!chosen || b.ratio < chosen->ratio ||
              (b.ratio == chosen->ratio &&
               key < (chosen->is_row ? n + chosen->index : chosen->index))) {
            chosen = &b;
          }
        }
      } else {
        double theta = kInf;
        for (const auto& b : blocks) {
          theta = std::min(theta, b.ratio + kPrimalTol / b.pivot);
        }
        for (const auto& b : blocks) {
          if (b.ratio <= theta && (!chosen || b.pivot > chosen->pivot)) chosen = &b;
        }
      }
    }

    ++run.iterations;
    if (!chosen || own_range <= chosen->ratio) {
      if (std::isinf(own_range)) {
        if (phase == 2) return finish(Status::Unbounded, "objective unbounded below");
        // A vanishing pivot hid the blocking variable; try another column.
        (enter.is_row ? banned_row[enter.index] : banned_col[enter.index]) = 1;
        continue;
      }
      if (enter.is_row) {
        const int t = st.pos_T[enter.index];
        st.T_up[t] = !st.T_up[t];
      } else {
        st.at_up[enter.index] = enter.dir > 0;
      }
      std::fill(banned_col.begin(), banned_col.end(), 0);
      std::fill(banned_row.begin(), banned_row.end(), 0);
      continue;
    }
    std::fill(banned_col.begin(), banned_col.end(), 0);
    std::fill(banned_row.begin(), banned_row.end(), 0);

    const bool to_upper = chosen->bound == Bound::Upper;
    if (!enter.is_row) {
      const int q = enter.index;
      if (!chosen->is_row) {
        const int j = chosen->index;
        st.S[st.pos_S[j]] = q;
        st.at_up[j] = to_upper;
      } else {
        st.S.push_back(q);
        st.T.push_back(chosen->index);
        st.T_up.push_back(to_upper);
      }
    } else {
      const int p = enter.index;
      if (!chosen->is_row) {
        const int j = chosen->index;
        st.S.erase(st.S.begin() + st.pos_S[j]);
        const int t = st.pos_T[p];
        st.T.erase(st.T.begin() + t);
        st.T_up.erase(st.T_up.begin() + t);
        st.at_up[j] = to_upper;
      } else {
        const int t = st.pos_T[p];
        st.T[t] = chosen->index;
        st.T_up[t] = to_upper;
      }
    }
    st.index();
  }
}

void compute_duals(const LinearProblem& problem, const Basis& basis, std::vector<double>& duals,
                   std::vector<double>& reduced_costs) {
  const int n = problem.column_count();
  const int m = problem.row_count();
  const int k = static_cast<int>(basis.basic_columns.size());
  duals.assign(m, 0.0);
  if (k > 0) {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(k, k);
    std::vector<int> pos(n, -1);
    for (int s = 0; s < k; ++s) pos[basis.basic_columns[s]] = s;
    for (int t = 0; t < k; ++t) {
      for (const auto& e : problem.row(basis.tight_rows[t]).entries) {
        if (pos[e.column] >= 0) B(t, pos[e.column]) = e.value;
      }
    }
    Eigen::VectorXd c(k);
    for (int s = 0; s < k; ++s) c[s] = problem.column(basis.basic_columns[s]).cost;
    const Eigen::VectorXd yt = B.transpose().fullPivLu().solve(c);
    for (int t = 0; t < k; ++t) duals[basis.tight_rows[t]] = yt[t];
  }
  reduced_costs.assign(n, 0.0);
  for (int j = 0; j < n; ++j) reduced_costs[j] = problem.column(j).cost;
  for (int i = 0; i < m; ++i) {
    if (duals[i] == 0.0) continue;
    for (const auto& e : problem.row(i).entries) reduced_costs[e.column] -= duals[i] * e.value;
  }
}

void fill_rows(const LinearProblem& problem, Solution& solution) {
  const int m = problem.row_count();
  solution.row_activity.assign(m, 0.0);
  solution.row_slack.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const Row& row = problem.row(i);
    const double a = problem.activity(i, solution.x);
    solution.row_activity[i] = a;
    switch (row.sense) {
      case RowSense::LessEqual: solution.row_slack[i] = row.rhs - a; break;
      case RowSense::GreaterEqual: solution.row_slack[i] = a - row.rhs; break;
      case RowSense::Equal: solution.row_slack[i] = -std::abs(row.rhs - a); break;
    }
  }
}

void snap_to_bounds(const LinearProblem& problem, std::vector<double>& x) {
  for (int j = 0; j < problem.column_count(); ++j) {
    const Column& c = problem.column(j);
    if (std::abs(x[j] - c.lower) <= kSnap) x[j] = c.lower;
    if (std::abs(x[j] - c.upper) <= kSnap) x[j] = c.upper;
  }
}

std::optional<Clock::time_point> deadline_from(const SolverOptions& options,
                                               Clock::time_point start) {
  if (options.time_limit_seconds <= 0.0) return std::nullopt;
  return start + std::chrono::duration_cast<Clock::duration>(
                     std::chrono::duration<double>(options.time_limit_seconds));
}

}  // namespace fiscalopt::lp::detail

namespace fiscalopt::lp {

Solution solve_lp(const LinearProblem& problem, const SolverOptions& options, const Basis* warm) {
  problem.validate();
  const auto start = detail::Clock::now();
  detail::SimplexSolver solver(problem, options);
  std::vector<double> lower, upper;
  for (const auto& c : problem.columns()) {
    lower.push_back(c.lower);
    upper.push_back(c.upper);
  }
  detail::LpRun run = solver.solve(lower, upper, warm, options.iteration_limit,
                                   detail::deadline_from(options, start));
  Solution sol;
  sol.status = run.status;
  sol.message = run.message;
  sol.x = std::move(run.x);
  detail::snap_to_bounds(problem, sol.x);
  sol.objective = problem.objective_value(sol.x);
  sol.basis = std::move(run.basis);
  detail::fill_rows(problem, sol);
  if (sol.status == Status::Optimal) {
    detail::compute_duals(problem, sol.basis, sol.duals, sol.reduced_costs);
    sol.best_bound = sol.objective;
  }
  if (sol.status == Status::Infeasible && options.compute_conflict) {
    sol.conflict = find_conflict(problem, options);
  }
  sol.stats.iterations = run.iterations;
  sol.stats.seconds = std::chrono::duration<double>(detail::Clock::now() - start).count();
  return sol;
}

Solution solve(const LinearProblem& problem, const SolverOptions& options) {
  return problem.has_binaries() ? solve_milp(problem, options) : solve_lp(problem, options);
}

}  // namespace fiscalopt::lp
