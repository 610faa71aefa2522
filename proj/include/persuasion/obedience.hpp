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

// Obedience certificates.
//
// A joint distribution pi over (state, action) makes the obedient strategy a
// best response iff <pi_a, v_{a->b}> <= 0 for every ordered action pair, where
// v_{a->b}(w) = u_r(b,w) - u_r(a,w). For a statistical experiment sigma the
// condition must hold for p x sigma at some prior p among the receiver's
// worst-case priors. For an ambiguous experiment it must hold at some point of
// K*, the face of conv{p x sigma} minimizing the receiver's obedient payoff.
//
// With a vertex-listed prior set and finitely many generators, the hull of the
// induced joints is the hull of the vertex-pair joints p_i x sigma_j (the map
// is bilinear), and its minimizing face is spanned by the minimizing pairs.
// Note that a pair on this face can have p_i outside the worst-case priors of
// sigma_j alone when the face is degenerate; the face is always computed from
// the joint minimization.
//
// Witness search is an LP over convex weights on the face. Among feasible
// weights it returns one maximizing the smallest obedience margin, so reported
// witnesses sit as deep inside the obedience region as the face allows.

#ifndef PERSUASION_OBEDIENCE_HPP_
#define PERSUASION_OBEDIENCE_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "persuasion/model.hpp"

namespace persuasion {

struct DeviationVector {
  std::size_t from_action = 0;
  std::size_t to_action = 0;
  std::vector<double> values;  // u_r(to, w) - u_r(from, w)
};

DeviationVector Deviation(const GameSpec& game, std::size_t from, std::size_t to);

struct JointObedience {
  bool obedient = false;
  Matrix slack;  // slack(a, b) = <pi_a, v_{a->b}>; the diagonal is zero
};

JointObedience CheckJointObedience(const JointDistribution& pi, const GameSpec& game,
                                   double tol = kFeasibilityTol);

enum class WitnessKind { kJoint, kStatistical, kAmbiguous };
const char* WitnessKindName(WitnessKind kind);

struct FaceWeight {
  std::size_t prior_vertex = 0;
  std::size_t generator = 0;
  double weight = 0.0;
};

struct ObedienceWitness {
  WitnessKind kind = WitnessKind::kJoint;
  std::optional<ProbabilityVector> prior;  // statistical witnesses only
  std::vector<FaceWeight> face_weights;    // nonzero weights, summing to one
  Matrix joint;                            // the certified (state, action) distribution
  Matrix slack;
  double margin = 0.0;  // min over a != b of -slack(a, b)
};

struct WorstPriorFace {
  std::vector<std::size_t> vertex_indices;
  double value = 0.0;  // receiver payoff under obedience at the face
};

struct KStarFace {
  std::vector<std::pair<std::size_t, std::size_t>> minimizing_pairs;  // (prior vertex, generator)
  double value = 0.0;
};

// Prior vertices minimizing the receiver's obedient payoff, ties inclusive.
WorstPriorFace WorstCasePriors(const StatisticalExperiment& sigma, const GameSpec& game);

// Searches conv(worst-case vertices) for a prior at which p x sigma is obedient.
// Throws kPrecondition for a non-canonical experiment.
std::optional<ObedienceWitness> StatisticalObedience(const StatisticalExperiment& sigma,
                                                     const GameSpec& game);

KStarFace KStar(const AmbiguousExperiment& sigma, const GameSpec& game);

// Searches K* for an obedient joint. Throws kPrecondition for non-canonical input.
std::optional<ObedienceWitness> AmbiguousObedience(const AmbiguousExperiment& sigma,
                                                   const GameSpec& game);

// Two-state shortcut: the interval of first-state probabilities, inside the
// worst-case face, at which sigma is obedient. Works for any number of actions.
std::optional<std::pair<double, double>> ObedientPriorInterval(const StatisticalExperiment& sigma,
                                                               const GameSpec& game);

// Fast existence test; interval arithmetic for two states, the LP otherwise.
bool IsStatisticallyObedient(const StatisticalExperiment& sigma, const GameSpec& game);

// Convex weights over `joints` maximizing the least obedience margin. Returns
// the weights and that margin; obedience is margin >= -kFeasibilityTol.
std::pair<std::vector<double>, double> MaxMarginMixture(const std::vector<Matrix>& joints,
                                                        const GameSpec& game);

}  // namespace persuasion

#endif  // PERSUASION_OBEDIENCE_HPP_
