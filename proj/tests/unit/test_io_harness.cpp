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
#include <string>

#include "doctest.h"
#include "persuasion/harness.hpp"
#include "persuasion/io.hpp"
#include "support.hpp"

using namespace persuasion;
using namespace persuasion::testing;

namespace {

Error ErrorOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(ErrorCode::kInternal, "unreachable");
}

const char* kG0 = R"({
  "states": ["w1", "w2"], "actions": ["a", "b"],
  "sender_payoff": [[1, 1], [0, 0]], "receiver_payoff": [[0, 1], [1, 0]],
  "prior_vertices": [[0.4, 0.6], [0.6, 0.4]]})";

}  // namespace

TEST_CASE("game json round trip is exact") {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const GameSpec g = RandomGame(rng, 2 + rng.Index(3), 2 + rng.Index(3), 1 + rng.Index(3));
    const GameSpec back = GameFromJson(ParseJsonText(GameToJson(g).dump(), "round trip"));
    CHECK(back.states == g.states);
    CHECK(back.actions == g.actions);
    CHECK(back.sender_payoff == g.sender_payoff);
    CHECK(back.receiver_payoff == g.receiver_payoff);
    CHECK(back.priors.vertices() == g.priors.vertices());
  }
}

TEST_CASE("game parsing errors name the field") {
  Json j = ParseJsonText(kG0, "g0");
  CHECK_NOTHROW(GameFromJson(j));

  Json bad = j;
  bad["prior_vertices"][0] = {0.4, 0.5};
  auto e = ErrorOf([&] { GameFromJson(bad); });
  CHECK(e.code() == ErrorCode::kInvalidArgument);
  CHECK(e.path() == "prior_vertices[0]");

  bad = j;
  bad.erase("sender_payoff");
  e = ErrorOf([&] { GameFromJson(bad); });
  CHECK(e.code() == ErrorCode::kInvalidArgument);
  CHECK(e.path() == "sender_payoff");

  bad = j;
  bad["sender_payoff"][1][0] = "x";
  CHECK(ErrorOf([&] { GameFromJson(bad); }).path() == "sender_payoff[1][0]");

  CHECK(ErrorOf([] { ParseJsonText("{", "broken"); }).code() == ErrorCode::kInvalidArgument);
  CHECK(ErrorOf([] { ReadJsonFile("/nonexistent/game.json"); }).code() == ErrorCode::kInvalidArgument);
}

TEST_CASE("experiment and strategy parsing") {
  const GameSpec g = GameFromJson(ParseJsonText(kG0, "g0"));
  const auto sigma = ExperimentFromJson(
      ParseJsonText(R"({"generators": [[[0.2, 0.8], [1, 0]], [[0, 1], [0.8, 0.2]]]})", "s"), g);
  CHECK(sigma.size() == 2);
  CHECK(sigma.is_canonical_for(g));
  const auto back = ExperimentFromJson(ExperimentToJson(sigma), g);
  CHECK(back.generator(1).kernel() == sigma.generator(1).kernel());

  const auto single = ExperimentFromJson(
      ParseJsonText(R"({"messages": ["m1", "m2", "m3"], "kernel": [[1, 0, 0], [0, 0.5, 0.5]]})", "s"), g);
  CHECK_FALSE(single.is_canonical_for(g));

  auto e = ErrorOf([&] {
    ExperimentFromJson(ParseJsonText(R"({"generators": [[[1, 0], [0, 1]], [[1, 0, 0], [0, 1, 0]]]})", "s"), g);
  });
  CHECK(e.code() == ErrorCode::kDimensionMismatch);
  CHECK(e.path() == "generators[1]");
  e = ErrorOf([&] { ExperimentFromJson(ParseJsonText(R"({"kernel": [[0.5, 0.6], [0, 1]]})", "s"), g); });
  CHECK(e.code() == ErrorCode::kInvalidArgument);
  CHECK(e.path() == "kernel");
  CHECK(ErrorOf([&] { ExperimentFromJson(ParseJsonText("{}", "s"), g); }).path() == "generators");

  const auto tau = StrategyFromJson(ParseJsonText(R"({"kernel": [[0.3, 0.7], [1, 0]]})", "t"));
  CHECK(tau(0, 1) == 0.7);
  CHECK(StrategyFromJson(StrategyToJson(tau)).kernel() == tau.kernel());
}

TEST_CASE("command parsing, config validation and exit codes") {
  CHECK(ParseCommand("verify-theorem") == Command::kVerifyTheorem);
  CHECK(ParseCommand("check-obedience") == Command::kCheckObedience);
  CHECK_FALSE(ParseCommand("bogus"));
  CHECK(std::string(CommandName(Command::kSearchGain)) == "search-gain");
  CHECK(ParseFormat("csv") == ReportFormat::kCsv);
  CHECK_FALSE(ParseFormat("xml"));

  RunConfig c;
  c.game_path = "g.json";
  CHECK_NOTHROW(ValidateConfig(c));
  c.command = Command::kCheckObedience;
  CHECK_THROWS_AS(ValidateConfig(c), Error);
  c.experiment_path = "s.json";
  CHECK_NOTHROW(ValidateConfig(c));
  c.format = ReportFormat::kCsv;
  CHECK_THROWS_AS(ValidateConfig(c), Error);
  c.command = Command::kSearchGain;
  CHECK_NOTHROW(ValidateConfig(c));
  c.resolution = 0.0;
  CHECK_THROWS_AS(ValidateConfig(c), Error);

  CHECK(ExitCodeFor(ErrorCode::kInvalidArgument) == 2);
  CHECK(ExitCodeFor(ErrorCode::kDimensionMismatch) == 2);
  CHECK(ExitCodeFor(ErrorCode::kPrecondition) == 2);
  CHECK(ExitCodeFor(ErrorCode::kTheoremViolation) == 3);
  CHECK(ExitCodeFor(ErrorCode::kLpFailure) == 4);
  CHECK(ExitCodeFor(ErrorCode::kInternal) == 4);
  CHECK(WorkerThreads() >= 1);
}

TEST_CASE("theorem check on the worked example") {
  const GameSpec g = G0();
  const auto t = CheckTheoremInstance(BinarySigma(g, {{0.2, 1.0}, {0.0, 0.8}}), g);
  CHECK(t.holds);
  CHECK_FALSE(t.degenerate);
  CHECK(t.failures.empty());
  REQUIRE(t.witness);
  CHECK(t.witness->lambda == doctest::Approx(0.5));
  CHECK(ErrorOf([&] { CheckTheoremInstance(BinarySigma(g, {{1.0, 0.0}}), g); }).code() ==
        ErrorCode::kPrecondition);

  const GameSpec dom = MakeBinaryGame({{1, 1}, {0, 0}}, {{0, 0}, {1, 0.5}}, 0.2, 0.9);
  const auto d = CheckTheoremInstance(BinarySigma(dom, {{0.0, 0.0}, {0.0, 0.0}}), dom);
  CHECK(d.degenerate);
  CHECK(d.holds);
}

TEST_CASE("theorem campaign is deterministic across thread counts") {
  const GameSpec g = G0();
  const auto a = VerifyTheoremCampaign(g, 100, 42, 1);
  const auto b = VerifyTheoremCampaign(g, 100, 42, 4);
  CHECK(a.trials == 100);
  CHECK(a.violations == 0);
  CHECK(a.sampled > 0);
  CHECK(TheoremCampaignToJson(a).dump() == TheoremCampaignToJson(b).dump());
  CHECK(TheoremCampaignCsv(a) == TheoremCampaignCsv(b));
  CHECK(TheoremCampaignCsv(a).rfind("seed,trial,n_generators,sampled,holds,lambda,p_alpha\n", 0) == 0);
  Rng rng(1);
  CHECK(ErrorOf([&] { VerifyTheoremCampaign(RandomGame(rng, 3, 2, 1), 1, 1, 1); }).code() ==
        ErrorCode::kPrecondition);
}

TEST_CASE("reports") {
  const GameSpec g = G0();
  const auto sigma = BinarySigma(g, {{0.2, 1.0}, {0.0, 0.8}});
  const Json solve = SolveReport(g, 1e-2, &sigma);
  CHECK(solve["statistical"]["value"].get<double>() == doctest::Approx(0.8));
  CHECK(solve["ambiguous"]["value"].get<double>() == doctest::Approx(0.32));
  const Json check = CheckObedienceReport(sigma, g);
  CHECK(check.dump().find("obedience_is_best_response") != std::string::npos);
  const auto raw = AmbiguousExperiment::Create(
      {StatisticalExperiment::Create({"m1", "m2"}, Matrix::FromRows({{1, 0}, {0, 1}}))});
  const auto e = ErrorOf([&] { CheckObedienceReport(raw, g); });
  CHECK(e.code() == ErrorCode::kPrecondition);
  CHECK(std::string(e.what()).find("canonicalize") != std::string::npos);
  const Json canon = CanonicalizeReport(raw, ReceiverStrategy::Obedient(2), g);
  CHECK(canon.is_object());
}
