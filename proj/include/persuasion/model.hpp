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

// Game data model for persuasion with a set of priors and maxmin players.
//
// A game fixes finite states and actions, sender and receiver payoffs indexed
// (action, state), and a polytope of common priors given by its vertices. The
// sender commits to a statistical experiment (a row-stochastic kernel from
// states to messages) or to an ambiguous experiment (the convex hull of
// finitely many such kernels). Both players evaluate outcomes by the worst
// prior and, for ambiguous experiments, the worst member.
//
// Everything here is immutable after construction and free of shared state.

#ifndef PERSUASION_MODEL_HPP_
#define PERSUASION_MODEL_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/error.hpp"
#include "persuasion/matrix.hpp"

namespace persuasion {

using Labels = std::vector<std::string>;
using ProbabilityVector = std::vector<double>;

// Tolerance ledger, smallest to largest.
inline constexpr double kRepresentationTol = 1e-12;  // simplex rows on construction
inline constexpr double kJointTol = 1e-10;           // joint distributions sum to one
inline constexpr double kTieTol = 1e-10;             // argmin faces (ties inclusive)
inline constexpr double kFeasibilityTol = 1e-8;      // obedience and BR decisions
inline constexpr double kValueTol = 1e-6;            // sender value comparisons

class PriorSet {
 public:
  // Throws kInvalidArgument naming "prior_vertices[i]" for a bad vertex.
  static PriorSet Create(std::vector<ProbabilityVector> vertices);

  std::size_t size() const { return vertices_.size(); }
  std::size_t num_states() const { return vertices_.front().size(); }
  const ProbabilityVector& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<ProbabilityVector>& vertices() const { return vertices_; }

  // Binary-state accessors: the probability of the first state ranges over
  // [lower(), upper()].
  double lower() const;
  double upper() const;

 private:
  explicit PriorSet(std::vector<ProbabilityVector> v) : vertices_(std::move(v)) {}
  std::vector<ProbabilityVector> vertices_;
};

struct GameSpec {
  Labels states;
  Labels actions;
  Matrix sender_payoff;    // (action, state)
  Matrix receiver_payoff;  // (action, state)
  PriorSet priors;

  static GameSpec Create(Labels states, Labels actions, Matrix sender_payoff,
                         Matrix receiver_payoff, PriorSet priors);

  std::size_t num_states() const { return states.size(); }
  std::size_t num_actions() const { return actions.size(); }
  bool is_binary() const { return states.size() == 2 && actions.size() == 2; }
};

class StatisticalExperiment {
 public:
  // kernel is (state, message); every row must lie on the simplex.
  static StatisticalExperiment Create(Labels messages, Matrix kernel);
  // Messages are the game's actions.
  static StatisticalExperiment Canonical(const GameSpec& game, Matrix kernel);

  const Labels& messages() const { return messages_; }
  const Matrix& kernel() const { return kernel_; }
  std::size_t num_states() const { return kernel_.rows(); }
  std::size_t num_messages() const { return kernel_.cols(); }
  double operator()(std::size_t state, std::size_t message) const {
    return kernel_(state, message);
  }

  bool is_canonical_for(const GameSpec& game) const {
    return messages_ == game.actions && num_states() == game.num_states();
  }

 private:
  StatisticalExperiment(Labels m, Matrix k) : messages_(std::move(m)), kernel_(std::move(k)) {}
  Labels messages_;
  Matrix kernel_;
};

// The convex hull of its generators.
class AmbiguousExperiment {
 public:
  // Generators must share states and messages; near-duplicates (within the
  // representation tolerance) are dropped, keeping first occurrences.
  static AmbiguousExperiment Create(std::vector<StatisticalExperiment> generators);

  std::size_t size() const { return generators_.size(); }
  const StatisticalExperiment& generator(std::size_t j) const { return generators_[j]; }
  const std::vector<StatisticalExperiment>& generators() const { return generators_; }
  const Labels& messages() const { return generators_.front().messages(); }
  bool is_canonical_for(const GameSpec& game) const {
    return generators_.front().is_canonical_for(game);
  }

 private:
  explicit AmbiguousExperiment(std::vector<StatisticalExperiment> g) : generators_(std::move(g)) {}
  std::vector<StatisticalExperiment> generators_;
};

// Mixed receiver plan, kernel indexed (message, action).
class ReceiverStrategy {
 public:
  static ReceiverStrategy Create(Matrix kernel);
  // The obedient strategy: follow every recommendation.
  static ReceiverStrategy Obedient(std::size_t num_actions);

  const Matrix& kernel() const { return kernel_; }
  std::size_t num_messages() const { return kernel_.rows(); }
  std::size_t num_actions() const { return kernel_.cols(); }
  double operator()(std::size_t message, std::size_t action) const {
    return kernel_(message, action);
  }

 private:
  explicit ReceiverStrategy(Matrix k) : kernel_(std::move(k)) {}
  Matrix kernel_;
};

// Probability mass on (state, action) pairs.
class JointDistribution {
 public:
  static JointDistribution Create(Matrix mass);

  const Matrix& mass() const { return mass_; }
  double operator()(std::size_t state, std::size_t action) const { return mass_(state, action); }
  std::size_t num_states() const { return mass_.rows(); }
  std::size_t num_actions() const { return mass_.cols(); }
  // Mass on each state jointly with `action`.
  std::vector<double> slice(std::size_t action) const { return mass_.column(action); }

 private:
  explicit JointDistribution(Matrix m) : mass_(std::move(m)) {}
  Matrix mass_;
};

struct MeuValue {
  double value = 0.0;
  std::vector<std::size_t> argmin_vertices;
};

struct AmbiguousMeuValue {
  double value = 0.0;
  // (prior vertex, generator) pairs attaining the minimum within kTieTol.
  std::vector<std::pair<std::size_t, std::size_t>> argmin;
};

// sum over (state, message, action) of p(w) sigma(m|w) tau(a|m) u(a,w).
double ExpectedPayoff(std::span<const double> prior, const StatisticalExperiment& sigma,
                      const ReceiverStrategy& tau, const Matrix& payoff);

// Worst prior over the vertex set. Throws on an empty prior set.
MeuValue MeuPayoff(const StatisticalExperiment& sigma, const ReceiverStrategy& tau,
                   const Matrix& payoff, const PriorSet& priors);

// Worst (prior vertex, generator) pair; the payoff is bilinear so the minimum
// over both hulls is attained at such a pair.
AmbiguousMeuValue AmbiguousMeuPayoff(const AmbiguousExperiment& sigma, const ReceiverStrategy& tau,
                                     const Matrix& payoff, const PriorSet& priors);

// mass(w, a) = p(w) sigma(a|w). The experiment's messages must be actions,
// i.e. the kernel has one column per action of the game it came from.
JointDistribution InducedJoint(std::span<const double> prior, const StatisticalExperiment& sigma);

// Folds the receiver's plan into the experiment: sigma*(a|w) = sum_m sigma(m|w) tau(a|m).
// The resulting generators are canonical with respect to `actions`.
StatisticalExperiment Canonicalize(const StatisticalExperiment& sigma, const ReceiverStrategy& tau,
                                   const Labels& actions);
AmbiguousExperiment Canonicalize(const AmbiguousExperiment& sigma, const ReceiverStrategy& tau,
                                 const Labels& actions);

// Garbling composition tau'(a|m) = sum_a' delta(a|a') tau(a'|m).
ReceiverStrategy Compose(const ReceiverStrategy& tau, const ReceiverStrategy& delta);

// Convex combination sum_j weights[j] * generator j.
StatisticalExperiment Mix(const AmbiguousExperiment& sigma, std::span<const double> weights);

}  // namespace persuasion

#endif  // PERSUASION_MODEL_HPP_
