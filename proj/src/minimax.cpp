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

#include "persuasion/minimax.hpp"

#include <algorithm>
#include <numeric>

#include "persuasion/lp.hpp"

namespace persuasion {

BestResponseResult ReceiverBestResponse(const AmbiguousExperiment& sigma, const GameSpec& game) {
  const std::size_t nm = sigma.messages().size();
  const std::size_t na = game.num_actions();
  const std::size_t ns = game.num_states();
  if (sigma.generator(0).num_states() != ns) {
    throw Error(ErrorCode::kDimensionMismatch, "experiment states differ from the game's");
  }
  const std::size_t t_var = nm * na;
  lp::Problem problem(t_var + 1);
  problem.set_free(t_var);
  problem.set_objective(t_var, 1.0);

  for (std::size_t m = 0; m < nm; ++m) {
    std::vector<double> row(t_var + 1, 0.0);
    for (std::size_t a = 0; a < na; ++a) row[m * na + a] = 1.0;
    problem.AddConstraint(std::move(row), lp::Sense::kEqual, 1.0);
  }
  // t - sum_{m,a} coef(m,a) tau(a|m) <= 0, coef(m,a) = sum_w p(w) sigma(m|w) u_r(a,w).
  for (std::size_t i = 0; i < game.priors.size(); ++i) {
    const auto& p = game.priors.vertex(i);
    for (const auto& g : sigma.generators()) {
      std::vector<double> row(t_var + 1, 0.0);
      for (std::size_t m = 0; m < nm; ++m) {
        for (std::size_t a = 0; a < na; ++a) {
          double coef = 0.0;
          for (std::size_t w = 0; w < ns; ++w) coef += p[w] * g(w, m) * game.receiver_payoff(a, w);
          row[m * na + a] = -coef;
        }
      }
      row[t_var] = 1.0;
      problem.AddConstraint(std::move(row), lp::Sense::kLessEqual, 0.0);
    }
  }

  const lp::Solution sol = lp::Maximize(problem);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kLpFailure,
                std::string("best-response LP ended with status ") + lp::StatusName(sol.status));
  }

  Matrix kernel(nm, na);
  for (std::size_t m = 0; m < nm; ++m) {
    double total = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      kernel(m, a) = std::max(sol.x[m * na + a], 0.0);
      total += kernel(m, a);
    }
    for (std::size_t a = 0; a < na; ++a) kernel(m, a) /= total;
  }

  BestResponseResult out;
  out.optimal_strategy = ReceiverStrategy::Create(std::move(kernel));
  out.value = sol.objective;
  for (std::size_t i = 0; i < game.priors.size(); ++i) {
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      const double v = ExpectedPayoff(game.priors.vertex(i), sigma.generator(j),
                                      out.optimal_strategy, game.receiver_payoff);
      if (v <= out.value + kFeasibilityTol) out.active_constraints.emplace_back(i, j);
    }
  }
  return out;
}

bool IsBestResponse(const ReceiverStrategy& tau, const AmbiguousExperiment& sigma,
                    const GameSpec& game) {
  const double achieved = AmbiguousMeuPayoff(sigma, tau, game.receiver_payoff, game.priors).value;
  return achieved >= ReceiverBestResponse(sigma, game).value - kFeasibilityTol;
}

}  // namespace persuasion
