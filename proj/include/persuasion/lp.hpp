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

// Dense two-phase tableau simplex for the small LPs in this library.
//
// Solves
//   maximize  c^T x
//   s.t.      A_i x {<=, >=, =} b_i   for every row i
//             x_j >= 0 unless variable j is declared free.
//
// Pricing is Dantzig's largest reduced cost; after a run of degenerate pivots
// the solver falls back to Bland's rule, which cannot cycle.

#ifndef PERSUASION_LP_HPP_
#define PERSUASION_LP_HPP_

#include <cstddef>
#include <vector>

namespace persuasion::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* StatusName(Status status);

class Problem {
 public:
  explicit Problem(std::size_t num_vars)
      : objective_(num_vars, 0.0), free_(num_vars, false) {}

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  void set_objective(std::size_t var, double coeff) { objective_[var] = coeff; }
  void set_free(std::size_t var) { free_[var] = true; }

  // `coeffs` has one entry per variable.
  void AddConstraint(std::vector<double> coeffs, Sense sense, double rhs);

  struct Row {
    std::vector<double> coeffs;
    Sense sense;
    double rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  bool is_free(std::size_t var) const { return free_[var]; }

 private:
  std::vector<double> objective_;
  std::vector<bool> free_;
  std::vector<Row> rows_;
};

struct Options {
  double pivot_tol = 1e-11;
  double feasibility_tol = 1e-9;
  std::size_t max_iterations = 100000;
  // Consecutive non-improving pivots before switching to Bland's rule.
  std::size_t degenerate_streak = 50;
};

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
};

Solution Maximize(const Problem& problem, const Options& options = {});

}  // namespace persuasion::lp

#endif  // PERSUASION_LP_HPP_
