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

#include "persuasion/obedience.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "persuasion/lp.hpp"

namespace persuasion {
namespace {

void RequireCanonical(const StatisticalExperiment& sigma, const GameSpec& game) {
  if (!sigma.is_canonical_for(game)) {
    throw Error(ErrorCode::kPrecondition,
                "experiment is not canonical (messages must be the game's actions); canonicalize it first");
  }
}

// slack(a, b) of a (state, action) mass matrix.
Matrix Slack(const Matrix& joint, const GameSpec& game) {
  const std::size_t na = game.num_actions();
  Matrix slack(na, na);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < na; ++b) {
      if (a == b) continue;
      double s = 0.0;
      for (std::size_t w = 0; w < game.num_states(); ++w) {
        s += joint(w, a) * (game.receiver_payoff(b, w) - game.receiver_payoff(a, w));
      }
      slack(a, b) = s;
    }
  }
  return slack;
}

double Margin(const Matrix& slack) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < slack.rows(); ++a) {
    for (std::size_t b = 0; b < slack.cols(); ++b) {
      if (a != b) m = std::min(m, -slack(a, b));
    }
  }
  return m;
}

Matrix Combine(const std::vector<Matrix>& joints, const std::vector<double>& weights) {
  Matrix out(joints.front().rows(), joints.front().cols());
  for (std::size_t k = 0; k < joints.size(); ++k) {
    if (weights[k] == 0.0) continue;
    for (std::size_t r = 0; r < out.rows(); ++r) {
      for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += weights[k] * joints[k](r, c);
    }
  }
  return out;
}

ObedienceWitness BuildWitness(WitnessKind kind, const std::vector<Matrix>& joints,
                              const std::vector<double>& weights,
                              const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                              const GameSpec& game) {
  ObedienceWitness w;
  w.kind = kind;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0.0) w.face_weights.push_back({pairs[k].first, pairs[k].second, weights[k]});
  }
  w.joint = Combine(joints, weights);
  w.slack = Slack(w.joint, game);
  w.margin = Margin(w.slack);
  return w;
}

}  // namespace

const char* WitnessKindName(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kJoint: return "joint";
    case WitnessKind::kStatistical: return "statistical";
    case WitnessKind::kAmbiguous: return "ambiguous";
  }
  return "unknown";
}

DeviationVector Deviation(const GameSpec& game, std::size_t from, std::size_t to) {
  DeviationVector d{from, to, std::vector<double>(game.num_states())};
  for (std::size_t w = 0; w < game.num_states(); ++w) {
    d.values[w] = game.receiver_payoff(to, w) - game.receiver_payoff(from, w);
  }
  return d;
}

JointObedience CheckJointObedience(const JointDistribution& pi, const GameSpec& game, double tol) {
  if (pi.num_states() != game.num_states() || pi.num_actions() != game.num_actions()) {
    throw Error(ErrorCode::kDimensionMismatch, "joint distribution is not over (states x actions)");
  }
  JointObedience out;
  out.slack = Slack(pi.mass(), game);
  out.obedient = Margin(out.slack) >= -tol;
  return out;
}

std::pair<std::vector<double>, double> MaxMarginMixture(const std::vector<Matrix>& joints,
                                                        const GameSpec& game) {
  const std::size_t n = joints.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "no candidate joints");
  if (n == 1) return {{1.0}, Margin(Slack(joints.front(), game))};

  std::vector<Matrix> slacks;
  slacks.reserve(n);
  for (const auto& j : joints) slacks.push_back(Slack(j, game));

  // Variables: weights 0..n-1, margin t (free). maximize t subject to
  // sum_k weight_k * slack_k(a,b) + t <= 0 for every nontrivial (a,b).
  lp::Problem problem(n + 1);
  problem.set_free(n);
  problem.set_objective(n, 1.0);
  std::vector<double> simplex(n + 1, 1.0);
  simplex[n] = 0.0;
  problem.AddConstraint(simplex, lp::Sense::kEqual, 1.0);
  const std::size_t na = game.num_actions();
  std::size_t active_rows = 0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < na; ++b) {
      if (a == b) continue;
      std::vector<double> row(n + 1, 0.0);
      bool trivial = true;
      for (std::size_t k = 0; k < n; ++k) {
        row[k] = slacks[k](a, b);
        if (std::abs(row[k]) > 1e-15) trivial = false;
      }
      if (trivial) continue;  // 0 <= 0 for every mixture
      row[n] = 1.0;
      problem.AddConstraint(std::move(row), lp::Sense::kLessEqual, 0.0);
      ++active_rows;
    }
  }
  if (active_rows == 0) {
    return {std::vector<double>(n, 1.0 / static_cast<double>(n)), 0.0};
  }
  const lp::Solution sol = lp::Maximize(problem);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kLpFailure,
                std::string("obedience LP ended with status ") + lp::StatusName(sol.status));
  }
  std::vector<double> weights(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
  double total = 0.0;
  for (double& w : weights) {
    if (w < 1e-14) w = 0.0;
    total += w;
  }
  for (double& w : weights) w /= total;
  return {weights, Margin(Slack(Combine(joints, weights), game))};
}

WorstPriorFace WorstCasePriors(const StatisticalExperiment& sigma, const GameSpec& game) {
  RequireCanonical(sigma, game);
  const MeuValue meu = MeuPayoff(sigma, ReceiverStrategy::Obedient(game.num_actions()),
                                 game.receiver_payoff, game.priors);
  return WorstPriorFace{meu.argmin_vertices, meu.value};
}

std::optional<ObedienceWitness> StatisticalObedience(const StatisticalExperiment& sigma,
                                                     const GameSpec& game) {
  const WorstPriorFace face = WorstCasePriors(sigma, game);
  std::vector<Matrix> joints;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i : face.vertex_indices) {
    joints.push_back(InducedJoint(game.priors.vertex(i), sigma).mass());
    pairs.emplace_back(i, 0);
  }
  const auto [weights, margin] = MaxMarginMixture(joints, game);
  if (margin < -kFeasibilityTol) return std::nullopt;

  ObedienceWitness w = BuildWitness(WitnessKind::kStatistical, joints, weights, pairs, game);
  ProbabilityVector prior(game.num_states(), 0.0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    for (std::size_t s = 0; s < prior.size(); ++s) {
      prior[s] += weights[k] * game.priors.vertex(pairs[k].first)[s];
    }
  }
  w.prior = std::move(prior);
  return w;
}

KStarFace KStar(const AmbiguousExperiment& sigma, const GameSpec& game) {
  if (!sigma.is_canonical_for(game)) {
    throw Error(ErrorCode::kPrecondition, "ambiguous experiment is not canonical; canonicalize it first");
  }
  const AmbiguousMeuValue meu = AmbiguousMeuPayoff(
      sigma, ReceiverStrategy::Obedient(game.num_actions()), game.receiver_payoff, game.priors);
  return KStarFace{meu.argmin, meu.value};
}

std::optional<ObedienceWitness> AmbiguousObedience(const AmbiguousExperiment& sigma,
                                                   const GameSpec& game) {
  const KStarFace face = KStar(sigma, game);
  std::vector<Matrix> joints;
  joints.reserve(face.minimizing_pairs.size());
  for (const auto& [i, j] : face.minimizing_pairs) {
    joints.push_back(InducedJoint(game.priors.vertex(i), sigma.generator(j)).mass());
  }
  const auto [weights, margin] = MaxMarginMixture(joints, game);
  if (margin < -kFeasibilityTol) return std::nullopt;
  return BuildWitness(WitnessKind::kAmbiguous, joints, weights, face.minimizing_pairs, game);
}

std::optional<std::pair<double, double>> ObedientPriorInterval(const StatisticalExperiment& sigma,
                                                               const GameSpec& game) {
  if (game.num_states() != 2) {
    throw Error(ErrorCode::kPrecondition, "prior interval shortcut needs exactly two states");
  }
  const WorstPriorFace face = WorstCasePriors(sigma, game);
  double lo = 1.0, hi = 0.0;
  for (std::size_t i : face.vertex_indices) {
    lo = std::min(lo, game.priors.vertex(i)[0]);
    hi = std::max(hi, game.priors.vertex(i)[0]);
  }
  // Each constraint is alpha + beta * p <= tol in the first-state probability p.
  const std::size_t na = game.num_actions();
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < na; ++b) {
      if (a == b) continue;
      const double v1 = game.receiver_payoff(b, 0) - game.receiver_payoff(a, 0);
      const double v2 = game.receiver_payoff(b, 1) - game.receiver_payoff(a, 1);
      const double alpha = sigma(1, a) * v2;
      const double beta = sigma(0, a) * v1 - alpha;
      const double at_lo = alpha + beta * lo;
      const double at_hi = alpha + beta * hi;
      if (at_lo > kFeasibilityTol && at_hi > kFeasibilityTol) return std::nullopt;
      if (at_lo > kFeasibilityTol) {
        lo = lo + (at_lo - kFeasibilityTol) / (at_lo - at_hi) * (hi - lo);
      } else if (at_hi > kFeasibilityTol) {
        hi = hi - (at_hi - kFeasibilityTol) / (at_hi - at_lo) * (hi - lo);
      }
      if (lo > hi) return std::nullopt;
    }
  }
  return std::make_pair(lo, hi);
}

bool IsStatisticallyObedient(const StatisticalExperiment& sigma, const GameSpec& game) {
  if (game.num_states() == 2) return ObedientPriorInterval(sigma, game).has_value();
  return StatisticalObedience(sigma, game).has_value();
}

}  // namespace persuasion
