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

#include "persuasion/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace persuasion {
namespace {

std::string Indexed(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

// Throws naming `path` unless `row` is a probability vector within kRepresentationTol.
void CheckSimplexRow(std::span<const double> row, const std::string& path) {
  double sum = 0.0;
  for (double v : row) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite entry", path);
    if (v < -kRepresentationTol || v > 1.0 + kRepresentationTol) {
      throw Error(ErrorCode::kInvalidArgument, "entry outside [0,1]", path);
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRepresentationTol) {
    throw Error(ErrorCode::kInvalidArgument,
                "probabilities sum to " + std::to_string(sum) + ", expected 1", path);
  }
}

void CheckRowStochastic(const Matrix& m, const std::string& field) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty kernel", field);
  }
  for (std::size_t r = 0; r < m.rows(); ++r) CheckSimplexRow(m.row(r), Indexed(field, r));
}

void CheckFinite(const Matrix& m, const std::string& field) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (double v : m.row(r)) {
      if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite payoff", Indexed(field, r));
    }
  }
}

void CheckPayoffAgainst(const StatisticalExperiment& sigma, const ReceiverStrategy& tau,
                        const Matrix& payoff) {
  if (sigma.num_messages() != tau.num_messages()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy rows do not match experiment messages");
  }
  if (payoff.rows() != tau.num_actions() || payoff.cols() != sigma.num_states()) {
    throw Error(ErrorCode::kDimensionMismatch, "payoff matrix is not (action, state)");
  }
}

}  // namespace

PriorSet PriorSet::Create(std::vector<ProbabilityVector> vertices) {
  if (vertices.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "prior set is empty", "prior_vertices");
  }
  const std::size_t n = vertices.front().size();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].size() != n || n == 0) {
      throw Error(ErrorCode::kDimensionMismatch, "vertex length differs",
                  Indexed("prior_vertices", i));
    }
    CheckSimplexRow(vertices[i], Indexed("prior_vertices", i));
  }
  return PriorSet(std::move(vertices));
}

double PriorSet::lower() const {
  double lo = 1.0;
  for (const auto& v : vertices_) lo = std::min(lo, v.front());
  return lo;
}

double PriorSet::upper() const {
  double hi = 0.0;
  for (const auto& v : vertices_) hi = std::max(hi, v.front());
  return hi;
}

GameSpec GameSpec::Create(Labels states, Labels actions, Matrix sender_payoff,
                          Matrix receiver_payoff, PriorSet priors) {
  if (states.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two states", "states");
  if (actions.size() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two actions", "actions");
  auto check_shape = [&](const Matrix& m, const char* field) {
    if (m.rows() != actions.size() || m.cols() != states.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "expected one row per action and one column per state",
                  field);
    }
    CheckFinite(m, field);
  };
  check_shape(sender_payoff, "sender_payoff");
  check_shape(receiver_payoff, "receiver_payoff");
  if (priors.num_states() != states.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "prior length differs from number of states",
                "prior_vertices");
  }
  return GameSpec{std::move(states), std::move(actions), std::move(sender_payoff),
                  std::move(receiver_payoff), std::move(priors)};
}

StatisticalExperiment StatisticalExperiment::Create(Labels messages, Matrix kernel) {
  CheckRowStochastic(kernel, "kernel");
  if (messages.size() != kernel.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "one kernel column per message required", "messages");
  }
  return StatisticalExperiment(std::move(messages), std::move(kernel));
}

StatisticalExperiment StatisticalExperiment::Canonical(const GameSpec& game, Matrix kernel) {
  if (kernel.rows() != game.num_states()) {
    throw Error(ErrorCode::kDimensionMismatch, "one kernel row per state required", "kernel");
  }
  return Create(game.actions, std::move(kernel));
}

AmbiguousExperiment AmbiguousExperiment::Create(std::vector<StatisticalExperiment> generators) {
  if (generators.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "ambiguous experiment needs a generator", "generators");
  }
  std::vector<StatisticalExperiment> unique;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const auto& g = generators[j];
    if (g.messages() != generators.front().messages() ||
        g.num_states() != generators.front().num_states()) {
      throw Error(ErrorCode::kDimensionMismatch, "generators disagree on states or messages",
                  Indexed("generators", j));
    }
    const bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const auto& u) {
      return u.kernel().MaxAbsDiff(g.kernel()) <= kRepresentationTol;
    });
    if (!duplicate) unique.push_back(g);
  }
  return AmbiguousExperiment(std::move(unique));
}

ReceiverStrategy ReceiverStrategy::Create(Matrix kernel) {
  CheckRowStochastic(kernel, "strategy");
  return ReceiverStrategy(std::move(kernel));
}

ReceiverStrategy ReceiverStrategy::Obedient(std::size_t num_actions) {
  Matrix k(num_actions, num_actions);
  for (std::size_t a = 0; a < num_actions; ++a) k(a, a) = 1.0;
  return ReceiverStrategy(std::move(k));
}

JointDistribution JointDistribution::Create(Matrix mass) {
  double total = 0.0;
  for (std::size_t r = 0; r < mass.rows(); ++r) {
    for (double v : mass.row(r)) {
      if (!std::isfinite(v) || v < -kJointTol) {
        throw Error(ErrorCode::kInvalidArgument, "negative or non-finite mass", Indexed("mass", r));
      }
      total += v;
    }
  }
  if (std::abs(total - 1.0) > kJointTol) {
    throw Error(ErrorCode::kInvalidArgument, "joint mass sums to " + std::to_string(total), "mass");
  }
  return JointDistribution(std::move(mass));
}

double ExpectedPayoff(std::span<const double> prior, const StatisticalExperiment& sigma,
                      const ReceiverStrategy& tau, const Matrix& payoff) {
  CheckPayoffAgainst(sigma, tau, payoff);
  if (prior.size() != sigma.num_states()) {
    throw Error(ErrorCode::kDimensionMismatch, "prior length differs from experiment states");
  }
  double total = 0.0;
  for (std::size_t w = 0; w < sigma.num_states(); ++w) {
    if (prior[w] == 0.0) continue;
    double state_total = 0.0;
    for (std::size_t m = 0; m < sigma.num_messages(); ++m) {
      const double sm = sigma(w, m);
      if (sm == 0.0) continue;
      double action_total = 0.0;
      for (std::size_t a = 0; a < tau.num_actions(); ++a) action_total += tau(m, a) * payoff(a, w);
      state_total += sm * action_total;
    }
    total += prior[w] * state_total;
  }
  return total;
}

MeuValue MeuPayoff(const StatisticalExperiment& sigma, const ReceiverStrategy& tau,
                   const Matrix& payoff, const PriorSet& priors) {
  std::vector<double> values(priors.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    values[i] = ExpectedPayoff(priors.vertex(i), sigma, tau, payoff);
  }
  MeuValue out;
  out.value = *std::min_element(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= out.value + kTieTol) out.argmin_vertices.push_back(i);
  }
  return out;
}

AmbiguousMeuValue AmbiguousMeuPayoff(const AmbiguousExperiment& sigma, const ReceiverStrategy& tau,
                                     const Matrix& payoff, const PriorSet& priors) {
  std::vector<double> values;
  values.reserve(priors.size() * sigma.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      values.push_back(ExpectedPayoff(priors.vertex(i), sigma.generator(j), tau, payoff));
    }
  }
  AmbiguousMeuValue out;
  out.value = *std::min_element(values.begin(), values.end());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      if (values[i * sigma.size() + j] <= out.value + kTieTol) out.argmin.emplace_back(i, j);
    }
  }
  return out;
}

JointDistribution InducedJoint(std::span<const double> prior, const StatisticalExperiment& sigma) {
  if (prior.size() != sigma.num_states()) {
    throw Error(ErrorCode::kDimensionMismatch, "prior length differs from experiment states");
  }
  Matrix mass(sigma.num_states(), sigma.num_messages());
  for (std::size_t w = 0; w < sigma.num_states(); ++w) {
    for (std::size_t a = 0; a < sigma.num_messages(); ++a) mass(w, a) = prior[w] * sigma(w, a);
  }
  return JointDistribution::Create(std::move(mass));
}

StatisticalExperiment Canonicalize(const StatisticalExperiment& sigma, const ReceiverStrategy& tau,
                                   const Labels& actions) {
  if (sigma.num_messages() != tau.num_messages()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy rows do not match experiment messages");
  }
  if (tau.num_actions() != actions.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "strategy columns do not match actions");
  }
  Matrix kernel = sigma.kernel() * tau.kernel();
  // Renormalize away accumulated rounding so the result passes the 1e-12 row check.
  for (std::size_t w = 0; w < kernel.rows(); ++w) {
    auto row = kernel.row(w);
    for (double& v : row) v = std::clamp(v, 0.0, 1.0);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= sum;
  }
  return StatisticalExperiment::Create(actions, std::move(kernel));
}

AmbiguousExperiment Canonicalize(const AmbiguousExperiment& sigma, const ReceiverStrategy& tau,
                                 const Labels& actions) {
  std::vector<StatisticalExperiment> out;
  out.reserve(sigma.size());
  for (const auto& g : sigma.generators()) out.push_back(Canonicalize(g, tau, actions));
  return AmbiguousExperiment::Create(std::move(out));
}

ReceiverStrategy Compose(const ReceiverStrategy& tau, const ReceiverStrategy& delta) {
  if (tau.num_actions() != delta.num_messages()) {
    throw Error(ErrorCode::kDimensionMismatch, "garbling is not defined on the strategy's actions");
  }
  Matrix k = tau.kernel() * delta.kernel();
  for (std::size_t m = 0; m < k.rows(); ++m) {
    auto row = k.row(m);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= sum;
  }
  return ReceiverStrategy::Create(std::move(k));
}

StatisticalExperiment Mix(const AmbiguousExperiment& sigma, std::span<const double> weights) {
  if (weights.size() != sigma.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one weight per generator required");
  }
  const auto& first = sigma.generator(0);
  Matrix kernel(first.num_states(), first.num_messages());
  double total = 0.0;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    const double wj = std::max(weights[j], 0.0);
    total += wj;
    if (wj == 0.0) continue;
    for (std::size_t w = 0; w < kernel.rows(); ++w) {
      for (std::size_t m = 0; m < kernel.cols(); ++m) kernel(w, m) += wj * sigma.generator(j)(w, m);
    }
  }
  if (total <= 0.0) throw Error(ErrorCode::kInvalidArgument, "mixture weights sum to zero");
  for (std::size_t w = 0; w < kernel.rows(); ++w) {
    auto row = kernel.row(w);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    for (double& v : row) v /= sum;
  }
  return StatisticalExperiment::Create(first.messages(), std::move(kernel));
}

}  // namespace persuasion
