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

// Two states, two actions.
//
// Write p for the probability of the first state, x = sigma(a|w1) and
// y = sigma(a|w2). After relabeling actions if needed and rescaling the
// receiver's payoff so that v_{a->b} = (1, -k) with k > 0:
//
//   Phi_ab(p, sigma) = p x - k (1-p) y
//   Phi_ba(p, sigma) = Phi_ab + k - (1+k) p
//   obedient at p   <=>  Phi_ab <= min{0, (1+k) p - k}
//   u_r(p, sigma, obedient) = M(sigma) p + N(sigma)
//       M = w1 - w2 + (1-x) + k (1-y),  N = w2 - k (1-y)
//
// where w_i is the (rescaled) payoff of action a in state i. The worst-case
// prior is p_L when M > 0, p_U when M < 0 and the whole interval when M = 0.
//
// Given an obedient ambiguous experiment, ConstructSigmaHat splits an obedient
// point of K* into alpha * (p_L x sigma_L) + (1-alpha) * (p_U x sigma_U), then
// mixes sigma_L and sigma_U so that M vanishes. The mixture is a member of the
// hull that is obedient at p_alpha = alpha p_L + (1-alpha) p_U, and because M
// vanishes p_alpha is a worst-case prior, so the mixture alone is obedient.
//
// All BinaryExperiment values use the game's original labels; relabeling is
// internal to the formulas above.

#ifndef PERSUASION_BINARY_HPP_
#define PERSUASION_BINARY_HPP_

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/model.hpp"
#include "persuasion/obedience.hpp"

namespace persuasion {

struct BinaryNormalization {
  double k = 0.0;
  std::array<double, 2> w{};  // rescaled payoff of the (relabeled) first action
  double scale = 1.0;         // positive factor applied to the receiver's payoff
  bool actions_swapped = false;
  bool degenerate = false;    // one action weakly dominates
  std::array<double, 2> v{};  // raw u_r(b,w_i) - u_r(a,w_i), original labels
};

// Throws kPrecondition unless the game is 2x2.
BinaryNormalization Normalize(const GameSpec& game);

struct BinaryExperiment {
  double x = 0.0;  // sigma(first action | first state)
  double y = 0.0;  // sigma(first action | second state)

  static BinaryExperiment FromCanonical(const StatisticalExperiment& sigma);
  StatisticalExperiment ToCanonical(const GameSpec& game) const;
};

BinaryExperiment Lerp(const BinaryExperiment& a, const BinaryExperiment& b, double t_on_a);

struct BinaryLine {
  double slope = 0.0;      // M(sigma)
  double intercept = 0.0;  // N(sigma)
};

// In rescaled units: slope * p + intercept = scale * u_r(p, sigma, obedient).
BinaryLine ReceiverLine(const BinaryExperiment& sigma, const BinaryNormalization& norm);

struct PhiValues {
  double ab = 0.0;
  double ba = 0.0;
};

// Throws kPrecondition on a degenerate normalization.
PhiValues Phi(double p, const BinaryExperiment& sigma, const BinaryNormalization& norm);

// Phi_ab <= min{0, (1+k)p - k} + tol, with tol in rescaled units.
bool BinaryObedience(double p, const BinaryExperiment& sigma, const BinaryNormalization& norm,
                     double tol = kFeasibilityTol);

struct FaceSplit {
  std::vector<std::size_t> lower;  // generators paired with p_L on K*
  std::vector<std::size_t> upper;  // generators paired with p_U on K*
};

FaceSplit SplitFaces(const AmbiguousExperiment& sigma, const GameSpec& game);

struct ObedientDecomposition {
  BinaryExperiment sigma_lower;
  BinaryExperiment sigma_upper;
  double alpha = 0.0;  // weight on p_L
};

// Aggregates a K* witness by prior endpoint. Throws kInvalidArgument for a
// witness that is not an ambiguous one over this experiment.
ObedientDecomposition DecomposeObedientPi(const ObedienceWitness& witness,
                                          const AmbiguousExperiment& sigma, const GameSpec& game);

struct DecompositionWitness {
  BinaryExperiment sigma_lower;
  BinaryExperiment sigma_upper;
  double alpha = 0.0;
  double p_alpha = 0.0;
  double lambda = 0.0;
  BinaryExperiment sigma_hat;
  // Diagnostics in rescaled units.
  double k = 0.0;
  double slope_lower = 0.0;
  double slope_upper = 0.0;
  double slope_hat = 0.0;
  double phi_hat = 0.0;  // Phi_ab(p_alpha, sigma_hat)
  double p_lower = 0.0;
  double p_upper = 0.0;
};

// Throws kPrecondition if the game is not 2x2, is degenerate, or sigma is not
// obedient; throws kTheoremViolation if a step of the construction fails to
// verify (the message carries the full diagnostics).
DecompositionWitness ConstructSigmaHat(const AmbiguousExperiment& sigma, const GameSpec& game);

// Whether q lies in the convex hull of `points` within Euclidean distance tol.
bool InConvexHull2D(const std::vector<std::array<double, 2>>& points, std::array<double, 2> q,
                    double tol);

}  // namespace persuasion

#endif  // PERSUASION_BINARY_HPP_
