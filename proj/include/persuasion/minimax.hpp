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

#ifndef PERSUASION_MINIMAX_HPP_
#define PERSUASION_MINIMAX_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "persuasion/model.hpp"

namespace persuasion {

struct BestResponseResult {
  double value = 0.0;
  ReceiverStrategy optimal_strategy = ReceiverStrategy::Obedient(1);
  // (prior vertex, generator) pairs whose payoff is within kFeasibilityTol of value.
  std::vector<std::pair<std::size_t, std::size_t>> active_constraints;
};

/// Receiver's maxmin value over mixed plans tau:
///
///   max_tau min_{i,j} u_r(p_i, sigma_j, tau)
///
/// over prior vertices p_i and generators sigma_j, solved as one LP in
/// (tau, t). The experiment may be non-canonical. A statistical experiment is
/// the one-generator case. Throws kLpFailure if the simplex does not finish.
BestResponseResult ReceiverBestResponse(const AmbiguousExperiment& sigma, const GameSpec& game);

/// True iff tau attains the best-response value within kFeasibilityTol.
bool IsBestResponse(const ReceiverStrategy& tau, const AmbiguousExperiment& sigma,
                    const GameSpec& game);

}  // namespace persuasion

#endif  // PERSUASION_MINIMAX_HPP_
