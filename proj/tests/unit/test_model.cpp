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

#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "persuasion/model.hpp"
#include "support.hpp"

using namespace persuasion;
using namespace persuasion::testing;

namespace {

std::string ErrorPath(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("validation names the offending field") {
  CHECK(ErrorPath([] { PriorSet::Create({{0.4, 0.5}}); }) == "prior_vertices[0]");
  CHECK(ErrorPath([] { PriorSet::Create({{0.5, 0.5}, {1.2, -0.2}}); }) == "prior_vertices[1]");
  CHECK(ErrorPath([] { PriorSet::Create({}); }) == "prior_vertices");
  CHECK(ErrorPath([] {
          GameSpec::Create({"w"}, {"a", "b"}, Matrix(2, 1), Matrix(2, 1), PriorSet::Create({{1.0}}));
        }) == "states");
  CHECK(ErrorPath([] {
          GameSpec::Create({"w1", "w2"}, {"a", "b"}, Matrix(3, 2), Matrix(2, 2),
                           PriorSet::Create({{0.5, 0.5}}));
        }) == "sender_payoff");
  Matrix nan(2, 2);
  nan(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK(ErrorPath([&] {
          GameSpec::Create({"w1", "w2"}, {"a", "b"}, Matrix(2, 2), nan, PriorSet::Create({{0.5, 0.5}}));
        }).rfind("receiver_payoff", 0) == 0);
  CHECK_THROWS_AS(StatisticalExperiment::Create({"m1", "m2"}, Matrix::FromRows({{0.5, 0.6}, {1, 0}})),
                  Error);
  CHECK_THROWS_AS(ReceiverStrategy::Create(Matrix::FromRows({{0.5, 0.4}})), Error);
  CHECK_THROWS_AS(JointDistribution::Create(Matrix::FromRows({{0.5, 0.4}, {0, 0}})), Error);
}

TEST_CASE("row sums are held to the representation tolerance") {
  const double off = 5e-12;
  CHECK_NOTHROW(StatisticalExperiment::Create({"m1", "m2"}, Matrix::FromRows({{0.5, 0.5 + 0.1 * off}})));
  CHECK_THROWS_AS(StatisticalExperiment::Create({"m1", "m2"}, Matrix::FromRows({{0.5, 0.5 + off}})),
                  Error);
}

TEST_CASE("ambiguous experiments drop near-duplicate generators") {
  const GameSpec g = G0();
  const auto sigma = BinarySigma(g, {{0.2, 1.0}, {0.2 + 1e-13, 1.0}, {0.0, 0.8}});
  CHECK(sigma.size() == 2);
  CHECK(sigma.generator(1).kernel()(1, 0) == doctest::Approx(0.8));
  CHECK_THROWS_AS(AmbiguousExperiment::Create({}), Error);
  CHECK_THROWS_AS(AmbiguousExperiment::Create(
                      {Binary(g, 0.1, 0.1),
                       StatisticalExperiment::Create({"x", "y"}, Matrix::FromRows({{1, 0}, {0, 1}}))}),
                  Error);
}

TEST_CASE("expected payoff examples") {
  const GameSpec g = G0();
  const auto obedient = ReceiverStrategy::Obedient(2);
  const auto reveal = Binary(g, 0.0, 1.0);
  const std::vector<double> p{0.3, 0.7};
  CHECK(ExpectedPayoff(p, reveal, obedient, g.receiver_payoff) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ExpectedPayoff(p, reveal, obedient, Matrix(2, 2)) == 0.0);

  const auto s = Binary(g, 3.0 / 7.0, 1.0);
  const std::vector<double> p7{0.7, 0.3};
  const double v = ExpectedPayoff(p7, s, obedient, g.sender_payoff);
  CHECK(std::abs(v - 0.6) <= 1e-12);
  CHECK(std::abs(v - TripleSum(p7, s.kernel(), obedient.kernel(), g.sender_payoff)) <= 1e-15);
}

TEST_CASE("meu payoff examples") {
  const GameSpec g = G0();
  const auto obedient = ReceiverStrategy::Obedient(2);
  const auto full = MeuPayoff(Binary(g, 0.0, 1.0), obedient, g.receiver_payoff, g.priors);
  CHECK(full.value == doctest::Approx(1.0));
  CHECK(full.argmin_vertices == std::vector<std::size_t>{0, 1});

  const auto s = Binary(g, 0.2, 1.0);
  const auto r = MeuPayoff(s, obedient, g.receiver_payoff, g.priors);
  // Oracle: dense grid over p in [0.4, 0.6].
  double grid = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2000; ++i) {
    const double p = 0.4 + 0.2 * i / 2000.0;
    grid = std::min(grid, TripleSum({p, 1 - p}, s.kernel(), obedient.kernel(), g.receiver_payoff));
  }
  CHECK(std::abs(r.value - 0.88) <= 1e-12);
  CHECK(std::abs(r.value - grid) <= 1e-12);
  CHECK(r.argmin_vertices == std::vector<std::size_t>{1});

  const GameSpec single = G0(0.7, 0.7);
  CHECK(MeuPayoff(s, obedient, single.receiver_payoff, single.priors).value ==
        doctest::Approx(ExpectedPayoff(std::vector<double>{0.7, 0.3}, s, obedient, single.receiver_payoff)));
}

TEST_CASE("ambiguous meu payoff examples") {
  const GameSpec g = G0();
  const auto obedient = ReceiverStrategy::Obedient(2);
  const auto sigma = BinarySigma(g, {{0.2, 1.0}, {0.0, 0.8}});
  const auto r = AmbiguousMeuPayoff(sigma, obedient, g.sender_payoff, g.priors);
  CHECK(std::abs(r.value - 0.32) <= 1e-12);
  REQUIRE(r.argmin.size() == 1);
  CHECK(r.argmin[0] == std::pair<std::size_t, std::size_t>{1, 1});

  // Oracle: grid over (p, mixing weight).
  double grid = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const double p = 0.4 + 0.2 * i / 200.0, t = j / 200.0;
      const double x = 0.2 * t, y = t + 0.8 * (1 - t);
      grid = std::min(grid, p * x + (1 - p) * y);
    }
  CHECK(std::abs(r.value - grid) <= 1e-12);

  const auto single = AmbiguousExperiment::Create({Binary(g, 0.2, 1.0)});
  CHECK(AmbiguousMeuPayoff(single, obedient, g.receiver_payoff, g.priors).value ==
        MeuPayoff(single.generator(0), obedient, g.receiver_payoff, g.priors).value);
  const Matrix constant(2, 2, 0.75);
  CHECK(AmbiguousMeuPayoff(sigma, obedient, constant, g.priors).value == doctest::Approx(0.75));
}

TEST_CASE("induced joint examples") {
  const GameSpec g = G0();
  const auto s = Binary(g, 0.2, 1.0);
  const auto j = InducedJoint(std::vector<double>{0.6, 0.4}, s);
  const Matrix expected = Matrix::FromRows({{0.12, 0.48}, {0.4, 0.0}});
  CHECK(j.mass().MaxAbsDiff(expected) <= 1e-15);
  CHECK(j.slice(0) == std::vector<double>{j(0, 0), j(1, 0)});

  const auto point = InducedJoint(std::vector<double>{1.0, 0.0}, s);
  CHECK(point(0, 0) == doctest::Approx(0.2));
  CHECK(point(1, 0) == 0.0);
  const auto half = InducedJoint(std::vector<double>{0.5, 0.5}, Binary(g, 0.0, 1.0));
  CHECK(half(0, 1) == doctest::Approx(0.5));
  CHECK(half(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("canonicalize examples") {
  const GameSpec g = G0();
  const auto sigma = BinarySigma(g, {{0.2, 1.0}, {0.0, 0.8}});
  const auto same = Canonicalize(sigma, ReceiverStrategy::Obedient(2), g.actions);
  for (std::size_t j = 0; j < sigma.size(); ++j)
    CHECK(same.generator(j).kernel() == sigma.generator(j).kernel());

  const auto always_a = ReceiverStrategy::Create(Matrix::FromRows({{1, 0}, {1, 0}}));
  const auto folded = Canonicalize(sigma, always_a, g.actions);
  REQUIRE(folded.size() == 1);  // both generators collapse to the same kernel
  CHECK(folded.generator(0).kernel() == Matrix::FromRows({{1, 0}, {1, 0}}));

  const auto messages =
      StatisticalExperiment::Create({"m1", "m2"}, Matrix::FromRows({{1, 0}, {0, 1}}));
  const auto tau = ReceiverStrategy::Create(Matrix::FromRows({{0.3, 0.7}, {1, 0}}));
  const auto star = Canonicalize(messages, tau, g.actions);
  CHECK(star.is_canonical_for(g));
  CHECK(star(0, 0) == doctest::Approx(0.3));
  CHECK(star(1, 0) == doctest::Approx(1.0));
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Matrix u = RandomPayoff(rng, 2, 2);
    const auto p = RandomSimplexPoint(rng, 2);
    CHECK(std::abs(TripleSum(p, messages.kernel(), tau.kernel(), u) -
                   TripleSum(p, star.kernel(), ReceiverStrategy::Obedient(2).kernel(), u)) <= 1e-12);
  }
  CHECK_THROWS_AS(Canonicalize(messages, ReceiverStrategy::Obedient(3), g.actions), Error);
}

TEST_CASE("property: canonicalization preserves every payoff") {
  Rng rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.Index(3), msgs = 2 + rng.Index(4), acts = 2 + rng.Index(3);
    std::vector<StatisticalExperiment> gens;
    const std::size_t k = 1 + rng.Index(3);
    for (std::size_t j = 0; j < k; ++j)
      gens.push_back(StatisticalExperiment::Create(Names("m", msgs), RandomSparseStochastic(rng, n, msgs)));
    const auto sigma = AmbiguousExperiment::Create(std::move(gens));
    const auto tau = ReceiverStrategy::Create(RandomSparseStochastic(rng, msgs, acts));
    const Labels actions = Names("a", acts);
    const auto star = Canonicalize(sigma, tau, actions);
    const auto obedient = ReceiverStrategy::Obedient(acts);
    const Matrix u = RandomPayoff(rng, acts, n);
    const auto p = RandomSimplexPoint(rng, n);
    for (std::size_t j = 0; j < sigma.size(); ++j) {
      const double lhs = TripleSum(p, sigma.generator(j).kernel(), tau.kernel(), u);
      const auto gj = Canonicalize(sigma.generator(j), tau, actions);
      const double rhs = ExpectedPayoff(p, gj, obedient, u);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    CHECK(star.is_canonical_for(GameSpec::Create(Names("w", n), actions, Matrix(acts, n),
                                                 Matrix(acts, n), PriorSet::Create({p}))));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("property: garbling composition identity") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.Index(2), msgs = 2 + rng.Index(3), acts = 2 + rng.Index(3);
    const auto s = StatisticalExperiment::Create(Names("m", msgs), RandomStochastic(rng, n, msgs));
    const auto tau = ReceiverStrategy::Create(RandomStochastic(rng, msgs, acts));
    const auto delta = ReceiverStrategy::Create(RandomStochastic(rng, acts, acts));
    const Matrix u = RandomPayoff(rng, acts, n);
    const auto p = RandomSimplexPoint(rng, n);
    const double lhs = ExpectedPayoff(p, s, Compose(tau, delta), u);
    const double rhs = ExpectedPayoff(p, Canonicalize(s, tau, Names("a", acts)), delta, u);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("property: induced joints are bilinear") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.Index(3), acts = 2 + rng.Index(3);
    const auto s1 = StatisticalExperiment::Create(Names("a", acts), RandomStochastic(rng, n, acts));
    const auto s2 = StatisticalExperiment::Create(Names("a", acts), RandomStochastic(rng, n, acts));
    const auto p = RandomSimplexPoint(rng, n), q = RandomSimplexPoint(rng, n);
    const double t = rng.Uniform();
    std::vector<double> mix(n);
    for (std::size_t w = 0; w < n; ++w) mix[w] = t * p[w] + (1 - t) * q[w];
    const Matrix lhs = InducedJoint(mix, s1).mass();
    const Matrix a = InducedJoint(p, s1).mass(), b = InducedJoint(q, s1).mass();
    double err = 0.0;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t k = 0; k < acts; ++k)
        err = std::max(err, std::abs(lhs(w, k) - (t * a(w, k) + (1 - t) * b(w, k))));
    CHECK(err <= 1e-12);

    const auto both = AmbiguousExperiment::Create({s1, s2});
    const std::vector<double> weights{t, 1 - t};
    const Matrix in_sigma = InducedJoint(p, Mix(both, weights)).mass();
    const Matrix c = InducedJoint(p, s2).mass();
    err = 0.0;
    for (std::size_t w = 0; w < n; ++w)
      for (std::size_t k = 0; k < acts; ++k)
        err = std::max(err, std::abs(in_sigma(w, k) - (t * a(w, k) + (1 - t) * c(w, k))));
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("property: meu values are attained and bounded by every generator") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const GameSpec g = RandomGame(rng, 2 + rng.Index(3), 2 + rng.Index(3), 1 + rng.Index(4));
    std::vector<StatisticalExperiment> gens;
    for (std::size_t j = 0; j < 1 + rng.Index(4); ++j)
      gens.push_back(StatisticalExperiment::Canonical(g, RandomStochastic(rng, g.num_states(), g.num_actions())));
    const auto sigma = AmbiguousExperiment::Create(gens);
    const auto tau = ReceiverStrategy::Create(RandomStochastic(rng, g.num_actions(), g.num_actions()));
    const auto amb = AmbiguousMeuPayoff(sigma, tau, g.receiver_payoff, g.priors);
    for (const auto& gen : sigma.generators()) {
      const auto m = MeuPayoff(gen, tau, g.receiver_payoff, g.priors);
      CHECK(amb.value <= m.value + 1e-15);
      for (std::size_t i : m.argmin_vertices)
        CHECK(std::abs(ExpectedPayoff(g.priors.vertex(i), gen, tau, g.receiver_payoff) - m.value) <= 1e-10);
    }
    for (auto [i, j] : amb.argmin)
      CHECK(std::abs(ExpectedPayoff(g.priors.vertex(i), sigma.generator(j), tau, g.receiver_payoff) -
                     amb.value) <= 1e-10);
  }
}
