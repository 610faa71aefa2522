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

#include "doctest.h"
#include "persuasion/obedience.hpp"
#include "support.hpp"

using namespace persuasion;
using namespace persuasion::testing;

namespace {

// Every witness must re-check from scratch.
void CheckWitness(const ObedienceWitness& w, const GameSpec& g) {
  double total = 0.0;
  for (const auto& fw : w.face_weights) {
    CHECK(fw.weight >= 0.0);
    total += fw.weight;
  }
  CHECK(std::abs(total - 1.0) <= 1e-10);
  CHECK(JointObedientOracle(w.joint, g.receiver_payoff, 1e-8));
  for (std::size_t a = 0; a < w.slack.rows(); ++a)
    for (std::size_t b = 0; b < w.slack.cols(); ++b) CHECK(w.slack(a, b) <= 1e-8);
}

}  // namespace

TEST_CASE("joint obedience examples") {
  const GameSpec g = G0();
  const auto match = JointDistribution::Create(Matrix::FromRows({{0.0, 0.5}, {0.5, 0.0}}));
  const auto r = CheckJointObedience(match, g);
  CHECK(r.obedient);
  CHECK(r.slack(0, 1) <= 0.0);
  CHECK(r.slack(1, 0) <= 0.0);

  const auto wrong = JointDistribution::Create(Matrix::FromRows({{1.0, 0.0}, {0.0, 0.0}}));
  const auto w = CheckJointObedience(wrong, g);
  CHECK_FALSE(w.obedient);
  CHECK(w.slack(0, 1) == doctest::Approx(1.0));

  // b strictly dominates: only b may carry mass.
  const GameSpec dom = MakeBinaryGame({{1, 1}, {0, 0}}, {{0, 0}, {1, 0.5}}, 0.4, 0.6);
  CHECK(CheckJointObedience(JointDistribution::Create(Matrix::FromRows({{0, 0.3}, {0, 0.7}})), dom).obedient);
  CHECK_FALSE(
      CheckJointObedience(JointDistribution::Create(Matrix::FromRows({{0.01, 0.29}, {0, 0.7}})), dom).obedient);
}

TEST_CASE("deviation vectors come straight from payoff differences") {
  const GameSpec g = G0();
  const auto d = Deviation(g, 0, 1);
  CHECK(d.values == std::vector<double>{1.0, -1.0});
}

TEST_CASE("worst-case priors") {
  const GameSpec g = G0();
  CHECK(WorstCasePriors(Binary(g, 0.2, 1.0), g).vertex_indices == std::vector<std::size_t>{1});
  CHECK(WorstCasePriors(Binary(g, 0.0, 0.8), g).vertex_indices == std::vector<std::size_t>{0});
  // x + y = 1 makes the receiver's payoff flat in p.
  CHECK(WorstCasePriors(Binary(g, 0.3, 0.7), g).vertex_indices == std::vector<std::size_t>{0, 1});
}

TEST_CASE("statistical obedience examples") {
  {
    const GameSpec g = G0(0.1, 0.9);
    const auto w = StatisticalObedience(Binary(g, 0.0, 1.0), g);
    REQUIRE(w);
    CHECK(w->kind == WitnessKind::kStatistical);
    CheckWitness(*w, g);
  }
  {
    const GameSpec g = G0(0.2, 0.4);
    const auto w = StatisticalObedience(Binary(g, 1.0, 1.0), g);
    REQUIRE(w);
    REQUIRE(w->prior);
    CHECK((*w->prior)[0] == doctest::Approx(0.4).epsilon(1e-12));
    CheckWitness(*w, g);
    const GameSpec h = G0(0.3, 0.6);
    CHECK_FALSE(StatisticalObedience(Binary(h, 1.0, 1.0), h));
    CHECK_FALSE(IsStatisticallyObedient(Binary(h, 1.0, 1.0), h));
  }
  {
    const GameSpec g = G0(0.7, 0.7);
    const auto w = StatisticalObedience(Binary(g, 3.0 / 7.0, 1.0), g);
    REQUIRE(w);
    CHECK((*w->prior)[0] == doctest::Approx(0.7));
    CHECK(std::abs(w->slack(0, 1)) <= 1e-12);
  }
  const GameSpec g = G0();
  const auto messages = StatisticalExperiment::Create({"m1", "m2"}, Matrix::FromRows({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(StatisticalObedience(messages, g), Error);
}

TEST_CASE("k-star and ambiguous obedience on the worked example") {
  const GameSpec g = G0();
  const auto sigma = BinarySigma(g, {{0.2, 1.0}, {0.0, 0.8}});
  const KStarFace face = KStar(sigma, g);
  CHECK(std::abs(face.value - 0.88) <= 1e-12);
  using P = std::pair<std::size_t, std::size_t>;
  CHECK(face.minimizing_pairs == std::vector<P>{{0, 1}, {1, 0}});

  const auto w = AmbiguousObedience(sigma, g);
  REQUIRE(w);
  CHECK(w->kind == WitnessKind::kAmbiguous);
  CheckWitness(*w, g);
  REQUIRE(w->face_weights.size() == 2);
  for (const auto& fw : w->face_weights) CHECK(std::abs(fw.weight - 0.5) <= 1e-10);
  CHECK(std::abs(w->slack(0, 1) + 0.38) <= 1e-10);
  CHECK(std::abs(w->slack(1, 0) + 0.38) <= 1e-10);

  // Oracle: scan the weight on (p_L, sigma2) and keep the best margin.
  double best = -1.0, best_alpha = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double alpha = i / 1000.0;
    Matrix mass = JointOf({0.4, 0.6}, Binary(g, 0.0, 0.8).kernel());
    const Matrix other = JointOf({0.6, 0.4}, Binary(g, 0.2, 1.0).kernel());
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) mass(r, c) = alpha * mass(r, c) + (1 - alpha) * other(r, c);
    const double ab = mass(0, 0) - mass(1, 0), ba = mass(1, 1) - mass(0, 1);
    const double margin = std::min(-ab, -ba);
    if (margin > best) best = margin, best_alpha = alpha;
  }
  CHECK(best_alpha == doctest::Approx(0.5));
  CHECK(best == doctest::Approx(w->margin).epsilon(1e-9));
}

TEST_CASE("ambiguous obedience fails when only the dominated action is recommended") {
  const GameSpec dom = MakeBinaryGame({{1, 1}, {0, 0}}, {{0, 0}, {1, 0.5}}, 0.2, 0.9);
  const auto sigma = BinarySigma(dom, {{1.0, 1.0}, {1.0, 1.0 - 1e-3}});
  CHECK_FALSE(AmbiguousObedience(sigma, dom));
}

TEST_CASE("two-state interval shortcut") {
  const GameSpec g = G0(0.2, 0.4);
  const auto interval = ObedientPriorInterval(Binary(g, 1.0, 1.0), g);
  REQUIRE(interval);
  CHECK(interval->first == doctest::Approx(0.4));
  CHECK(interval->second == doctest::Approx(0.4));
}

TEST_CASE("property: single-generator ambiguous obedience matches statistical obedience") {
  Rng rng(31);
  int agree = 0, obedient = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const GameSpec g = RandomGame(rng, 2 + rng.Index(2), 2 + rng.Index(2), 1 + rng.Index(3));
    const auto s = StatisticalExperiment::Canonical(
        g, RandomSparseStochastic(rng, g.num_states(), g.num_actions()));
    const auto a = AmbiguousObedience(AmbiguousExperiment::Create({s}), g);
    const auto st = StatisticalObedience(s, g);
    agree += a.has_value() == st.has_value();
    obedient += st.has_value();
    if (a) CheckWitness(*a, g);
    if (st) CheckWitness(*st, g);
    CHECK(IsStatisticallyObedient(s, g) == st.has_value());
  }
  CHECK(agree == 1000);
  CHECK(obedient > 50);  // the sample is not trivially one-sided
}

TEST_CASE("property: two-state statistical obedience matches candidate enumeration") {
  Rng rng(77);
  int disagreements = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const GameSpec g = RandomGame(rng, 2, 2 + rng.Index(3), 1 + rng.Index(3));
    const Matrix k = RandomSparseStochastic(rng, 2, g.num_actions());
    const auto s = StatisticalExperiment::Canonical(g, k);
    disagreements += StatisticalObedience(s, g).has_value() != TwoStateObedienceOracle(k, g, 1e-8);
  }
  CHECK(disagreements == 0);
}

TEST_CASE("property: k-star value equals the receiver's ambiguous meu payoff") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const GameSpec g = RandomGame(rng, 2 + rng.Index(3), 2 + rng.Index(3), 1 + rng.Index(3));
    std::vector<StatisticalExperiment> gens;
    for (std::size_t j = 0; j < 1 + rng.Index(4); ++j)
      gens.push_back(StatisticalExperiment::Canonical(g, RandomStochastic(rng, g.num_states(), g.num_actions())));
    const auto sigma = AmbiguousExperiment::Create(gens);
    const auto face = KStar(sigma, g);
    const auto meu = AmbiguousMeuPayoff(sigma, ReceiverStrategy::Obedient(g.num_actions()),
                                        g.receiver_payoff, g.priors);
    CHECK(std::abs(face.value - meu.value) <= 1e-10);
    CHECK(!face.minimizing_pairs.empty());
    if (auto w = AmbiguousObedience(sigma, g)) CheckWitness(*w, g);
  }
}

TEST_CASE("property: singleton prior in 2x2 games puts an obedient generator in every obedient set") {
  Rng rng(55);
  int obedient = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const GameSpec g = RandomBinaryGame(rng, /*singleton_prior=*/true);
    std::vector<StatisticalExperiment> gens;
    for (std::size_t j = 0; j < 2 + rng.Index(4); ++j)
      gens.push_back(StatisticalExperiment::Canonical(g, RandomSparseStochastic(rng, 2, 2)));
    const auto sigma = AmbiguousExperiment::Create(gens);
    if (!AmbiguousObedience(sigma, g)) continue;
    ++obedient;
    bool found = false;
    for (const auto& s : sigma.generators()) found = found || TwoStateObedienceOracle(s.kernel(), g, 1e-8);
    CHECK(found);
  }
  CHECK(obedient > 50);
}
