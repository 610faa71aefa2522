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

// Fixtures, random instance generators and brute-force oracles shared by the
// unit tests and the acceptance gate. Oracles here avoid the library's own
// helpers on purpose: they recompute sums, faces and inner products from raw
// payoff tables.

#ifndef PERSUASION_TESTS_SUPPORT_HPP_
#define PERSUASION_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "persuasion/model.hpp"
#include "persuasion/random.hpp"

namespace persuasion::testing {

inline GameSpec MakeBinaryGame(const std::vector<std::vector<double>>& sender,
                               const std::vector<std::vector<double>>& receiver, double p_lo,
                               double p_hi) {
  std::vector<ProbabilityVector> vertices{{p_lo, 1.0 - p_lo}};
  if (p_hi != p_lo) vertices.push_back({p_hi, 1.0 - p_hi});
  return GameSpec::Create({"w1", "w2"}, {"a", "b"}, Matrix::FromRows(sender),
                          Matrix::FromRows(receiver), PriorSet::Create(std::move(vertices)));
}

// The worked example: the receiver wants to match the state (a in w2, b in w1)
// and the sender wants action a.
inline GameSpec G0(double p_lo = 0.4, double p_hi = 0.6) {
  return MakeBinaryGame({{1, 1}, {0, 0}}, {{0, 1}, {1, 0}}, p_lo, p_hi);
}

// (x, y) = probability of recommending the first action in each state.
inline StatisticalExperiment Binary(const GameSpec& game, double x, double y) {
  return StatisticalExperiment::Canonical(game, Matrix::FromRows({{x, 1.0 - x}, {y, 1.0 - y}}));
}

inline AmbiguousExperiment BinarySigma(const GameSpec& game,
                                       const std::vector<std::pair<double, double>>& gens) {
  std::vector<StatisticalExperiment> out;
  for (auto [x, y] : gens) out.push_back(Binary(game, x, y));
  return AmbiguousExperiment::Create(std::move(out));
}

inline Matrix RandomStochastic(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < cols; ++c) total += (m(r, c) = rng.Uniform() + 1e-3);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) /= total;
  }
  return m;
}

// Random kernel with a chance of exact zeros and pure rows, so boundary cases
// show up in property tests.
inline Matrix RandomSparseStochastic(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m = RandomStochastic(rng, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const double u = rng.Uniform();
    if (u < 0.15) {
      const std::size_t hot = rng.Index(cols);
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = c == hot ? 1.0 : 0.0;
    } else if (u < 0.3 && cols > 2) {
      const std::size_t cold = rng.Index(cols);
      const double lost = m(r, cold);
      m(r, cold) = 0.0;
      m(r, (cold + 1) % cols) += lost;
    }
  }
  return m;
}

inline ProbabilityVector RandomSimplexPoint(Rng& rng, std::size_t n) {
  Matrix m = RandomStochastic(rng, 1, n);
  return {m.row(0).begin(), m.row(0).end()};
}

inline Matrix RandomPayoff(Rng& rng, std::size_t actions, std::size_t states) {
  Matrix m(actions, states);
  for (std::size_t a = 0; a < actions; ++a)
    for (std::size_t w = 0; w < states; ++w) m(a, w) = rng.Uniform(-1.0, 1.0);
  return m;
}

inline Labels Names(const char* prefix, std::size_t n) {
  Labels out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline GameSpec RandomGame(Rng& rng, std::size_t states, std::size_t actions,
                           std::size_t vertices) {
  std::vector<ProbabilityVector> v;
  for (std::size_t i = 0; i < vertices; ++i) v.push_back(RandomSimplexPoint(rng, states));
  return GameSpec::Create(Names("w", states), Names("a", actions), RandomPayoff(rng, actions, states),
                          RandomPayoff(rng, actions, states), PriorSet::Create(std::move(v)));
}

// 2x2 game whose deviation vector has mixed signs (in either orientation) and
// whose prior interval sometimes touches 0 or 1 or collapses to a point.
inline GameSpec RandomBinaryGame(Rng& rng, bool singleton_prior = false) {
  const double w1 = rng.Uniform(-1.0, 1.0);
  const double w2 = rng.Uniform(-1.0, 1.0);
  double v1 = rng.Uniform(0.05, 2.0);
  double v2 = -rng.Uniform(0.05, 2.0);
  if (rng.Uniform() < 0.5) {
    v1 = -v1;
    v2 = -v2;
  }
  const std::vector<std::vector<double>> receiver{{w1, w2}, {w1 + v1, w2 + v2}};
  const std::vector<std::vector<double>> sender{{rng.Uniform(-1, 1), rng.Uniform(-1, 1)},
                                                {rng.Uniform(-1, 1), rng.Uniform(-1, 1)}};
  double lo = rng.Uniform();
  double hi = rng.Uniform();
  if (lo > hi) std::swap(lo, hi);
  const double shape = rng.Uniform();
  if (singleton_prior || shape < 0.1) {
    hi = lo;
  } else if (shape < 0.2) {
    lo = 0.0;
  } else if (shape < 0.3) {
    hi = 1.0;
  }
  return MakeBinaryGame(sender, receiver, lo, hi);
}

// sum over (w, m, a) of p(w) sigma(m|w) tau(a|m) u(a, w), loop by loop.
inline double TripleSum(const std::vector<double>& p, const Matrix& sigma, const Matrix& tau,
                        const Matrix& u) {
  double total = 0.0;
  for (std::size_t w = 0; w < sigma.rows(); ++w)
    for (std::size_t m = 0; m < sigma.cols(); ++m)
      for (std::size_t a = 0; a < tau.cols(); ++a) total += p[w] * sigma(w, m) * tau(m, a) * u(a, w);
  return total;
}

// Inner products <pi_a, u_r(b) - u_r(a)> recomputed from the payoff table.
inline bool JointObedientOracle(const Matrix& mass, const Matrix& receiver, double tol) {
  for (std::size_t a = 0; a < mass.cols(); ++a)
    for (std::size_t b = 0; b < mass.cols(); ++b) {
      if (a == b) continue;
      double s = 0.0;
      for (std::size_t w = 0; w < mass.rows(); ++w)
        s += mass(w, a) * (receiver(b, w) - receiver(a, w));
      if (s > tol) return false;
    }
  return true;
}

inline Matrix JointOf(const std::vector<double>& p, const Matrix& kernel) {
  Matrix m(kernel.rows(), kernel.cols());
  for (std::size_t w = 0; w < kernel.rows(); ++w)
    for (std::size_t a = 0; a < kernel.cols(); ++a) m(w, a) = p[w] * kernel(w, a);
  return m;
}

// Two-state statistical obedience by candidate enumeration: the set where all
// slacks are at most tol is an interval of the worst-case face, so if it is
// nonempty one of its endpoints is a face endpoint or a point where some slack
// equals tol.
inline bool TwoStateObedienceOracle(const Matrix& kernel, const GameSpec& game, double tol) {
  const Matrix& ur = game.receiver_payoff;
  const std::size_t A = kernel.cols();
  auto receiver = [&](double p) {
    double s = 0.0;
    for (std::size_t a = 0; a < A; ++a)
      s += p * kernel(0, a) * ur(a, 0) + (1.0 - p) * kernel(1, a) * ur(a, 1);
    return s;
  };
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& v : game.priors.vertices()) worst = std::min(worst, receiver(v[0]));
  double lo = 2.0, hi = -1.0;
  for (const auto& v : game.priors.vertices()) {
    if (receiver(v[0]) <= worst + 1e-10) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
  }
  std::vector<double> candidates{lo, hi};
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t b = 0; b < A; ++b) {
      if (a == b) continue;
      // slack(p) = p * c1 + (1 - p) * c2
      const double c1 = kernel(0, a) * (ur(b, 0) - ur(a, 0));
      const double c2 = kernel(1, a) * (ur(b, 1) - ur(a, 1));
      if (c1 != c2) {
        const double root = (c2 - tol) / (c2 - c1);
        if (root > lo && root < hi) candidates.push_back(root);
      }
    }
  for (double p : candidates) {
    if (JointObedientOracle(JointOf({p, 1.0 - p}, kernel), ur, tol)) return true;
  }
  return false;
}

}  // namespace persuasion::testing

#endif  // PERSUASION_TESTS_SUPPORT_HPP_
