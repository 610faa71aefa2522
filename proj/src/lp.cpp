// Copyright 2026 The Persuasion Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "persuasion/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "persuasion/error.hpp"

namespace persuasion::lp {

const char* StatusName(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

void Problem::AddConstraint(std::vector<double> coeffs, Sense sense, double rhs) {
  if (coeffs.size() != num_vars()) {
    throw Error(ErrorCode::kDimensionMismatch, "constraint width differs from variable count");
  }
  rows_.push_back(Row{std::move(coeffs), sense, rhs});
}

namespace {

enum class ColumnKind { kStructural, kSlack, kArtificial };

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void Pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        double v = at(r, c) - f * at(pr, c);
        if (std::abs(v) < 1e-15) v = 0.0;
        at(r, c) = v;
      }
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  double Objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) z += cost[basis_[r]] * rhs(r);
    return z;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

// Primal simplex on `t` maximizing cost^T x over the columns in `allowed`.
Status RunSimplex(Tableau& t, const std::vector<double>& cost, const std::vector<bool>& allowed,
                  const Options& opt, std::size_t& iterations) {
  std::vector<double> reduced(t.cols());
  bool bland = false;
  std::size_t streak = 0;
  double last_objective = t.Objective(cost);
  while (true) {
    if (iterations >= opt.max_iterations) return Status::kIterationLimit;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      double d = cost[c];
      for (std::size_t r = 0; r < t.rows(); ++r) d -= cost[t.basis()[r]] * t.at(r, c);
      reduced[c] = d;
    }
    std::size_t enter = t.cols();
    double best = opt.pivot_tol;
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (!allowed[c] || reduced[c] <= opt.pivot_tol) continue;
      if (bland) {
        enter = c;
        break;
      }
      if (reduced[c] > best) {
        best = reduced[c];
        enter = c;
      }
    }
    if (enter == t.cols()) return Status::kOptimal;

    std::size_t leave = t.rows();
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= opt.pivot_tol) continue;
      const double q = std::max(t.rhs(r), 0.0) / a;
      if (q < ratio - 1e-13) {
        ratio = q;
        leave = r;
      } else if (q <= ratio + 1e-13 && t.basis()[r] < t.basis()[leave]) {
        leave = r;  // lowest-index tie break keeps Bland's guarantee
      }
    }
    if (leave == t.rows()) return Status::kUnbounded;

    t.Pivot(leave, enter);
    ++iterations;
    const double z = t.Objective(cost);
    if (z > last_objective + 1e-12) {
      streak = 0;
      last_objective = z;
    } else if (++streak >= opt.degenerate_streak) {
      bland = true;
    }
  }
}

}  // namespace

Solution Maximize(const Problem& problem, const Options& opt) {
  const std::size_t n = problem.num_vars();
  const std::size_t m = problem.num_constraints();

  // Structural columns: free variables are split into positive and negative parts.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t n_struct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = n_struct++;
    if (problem.is_free(j)) neg_col[j] = n_struct++;
  }

  // Rows with negative right-hand sides are negated so every rhs is >= 0.
  struct NormalRow {
    std::vector<double> coeffs;
    Sense sense;
    double rhs;
  };
  std::vector<NormalRow> normal;
  normal.reserve(m);
  std::size_t n_slack = 0, n_art = 0;
  for (const auto& row : problem.rows()) {
    NormalRow nr{std::vector<double>(n_struct, 0.0), row.sense, row.rhs};
    for (std::size_t j = 0; j < n; ++j) {
      nr.coeffs[pos_col[j]] = row.coeffs[j];
      if (neg_col[j] != SIZE_MAX) nr.coeffs[neg_col[j]] = -row.coeffs[j];
    }
    if (nr.rhs < 0.0) {
      for (double& v : nr.coeffs) v = -v;
      nr.rhs = -nr.rhs;
      if (nr.sense == Sense::kLessEqual) {
        nr.sense = Sense::kGreaterEqual;
      } else if (nr.sense == Sense::kGreaterEqual) {
        nr.sense = Sense::kLessEqual;
      }
    }
    if (nr.sense != Sense::kEqual) ++n_slack;
    if (nr.sense != Sense::kLessEqual) ++n_art;
    normal.push_back(std::move(nr));
  }

  const std::size_t total = n_struct + n_slack + n_art;
  Tableau t(m, total);
  std::vector<ColumnKind> kind(total, ColumnKind::kStructural);
  std::size_t next_slack = n_struct, next_art = n_struct + n_slack;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& nr = normal[r];
    for (std::size_t c = 0; c < n_struct; ++c) t.at(r, c) = nr.coeffs[c];
    t.rhs(r) = nr.rhs;
    if (nr.sense == Sense::kLessEqual) {
      kind[next_slack] = ColumnKind::kSlack;
      t.at(r, next_slack) = 1.0;
      t.basis()[r] = next_slack++;
    } else {
      if (nr.sense == Sense::kGreaterEqual) {
        kind[next_slack] = ColumnKind::kSlack;
        t.at(r, next_slack++) = -1.0;
      }
      kind[next_art] = ColumnKind::kArtificial;
      t.at(r, next_art) = 1.0;
      t.basis()[r] = next_art++;
    }
  }

  Solution sol;
  std::vector<bool> allowed(total, true);

  if (n_art > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t c = 0; c < total; ++c) {
      if (kind[c] == ColumnKind::kArtificial) phase1[c] = -1.0;
    }
    const Status s = RunSimplex(t, phase1, allowed, opt, sol.iterations);
    if (s == Status::kIterationLimit) {
      sol.status = s;
      return sol;
    }
    double scale = 1.0;
    for (const auto& nr : normal) scale = std::max(scale, nr.rhs);
    if (-t.Objective(phase1) > opt.feasibility_tol * scale) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis where possible. A row
    // with no usable pivot is redundant and stays inert in phase two.
    for (std::size_t r = 0; r < m; ++r) {
      if (kind[t.basis()[r]] != ColumnKind::kArtificial) continue;
      std::size_t best_c = total;
      double best_a = opt.pivot_tol;
      for (std::size_t c = 0; c < total; ++c) {
        if (kind[c] == ColumnKind::kArtificial) continue;
        if (std::abs(t.at(r, c)) > best_a) {
          best_a = std::abs(t.at(r, c));
          best_c = c;
        }
      }
      if (best_c < total) t.Pivot(r, best_c);
    }
    for (std::size_t c = 0; c < total; ++c) {
      if (kind[c] == ColumnKind::kArtificial) allowed[c] = false;
    }
  }

  std::vector<double> cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = problem.objective()[j];
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -problem.objective()[j];
  }
  const Status s = RunSimplex(t, cost, allowed, opt, sol.iterations);
  sol.status = s;
  if (s != Status::kOptimal) return sol;

  std::vector<double> column_value(total, 0.0);
  for (std::size_t r = 0; r < m; ++r) column_value[t.basis()[r]] = std::max(t.rhs(r), 0.0);
  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = column_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) sol.x[j] -= column_value[neg_col[j]];
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += problem.objective()[j] * sol.x[j];
  return sol;
}

}  // namespace persuasion::lp
