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

#include "persuasion/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "persuasion/minimax.hpp"
#include "persuasion/obedience.hpp"
#include "persuasion/parallel.hpp"
#include "persuasion/random.hpp"

namespace persuasion {

namespace {

constexpr double kHullTol = 1e-9;
constexpr std::size_t kMaxRetries = 200;

Json PairsJson(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Json out = Json::array();
  for (auto [i, j] : pairs) out.push_back({{"prior_vertex", i}, {"generator", j}});
  return out;
}

void RequireCanonical(const AmbiguousExperiment& sigma, const GameSpec& game) {
  if (sigma.generator(0).num_states() != game.num_states()) {
    throw Error(ErrorCode::kDimensionMismatch, "experiment has " +
                                                   std::to_string(sigma.generator(0).num_states()) +
                                                   " state rows, game has " +
                                                   std::to_string(game.num_states()));
  }
  if (!sigma.is_canonical_for(game)) {
    throw Error(ErrorCode::kPrecondition,
                "experiment messages are not the game's actions; run `canonicalize` with a "
                "receiver strategy first");
  }
}

}  // namespace

const char* CommandName(Command command) {
  switch (command) {
    case Command::kSolve: return "solve";
    case Command::kCheckObedience: return "check-obedience";
    case Command::kVerifyTheorem: return "verify-theorem";
    case Command::kSearchGain: return "search-gain";
    case Command::kCanonicalize: return "canonicalize";
  }
  return "unknown";
}

std::optional<Command> ParseCommand(const std::string& name) {
  for (Command c : {Command::kSolve, Command::kCheckObedience, Command::kVerifyTheorem,
                    Command::kSearchGain, Command::kCanonicalize}) {
    if (name == CommandName(c)) return c;
  }
  return std::nullopt;
}

std::optional<ReportFormat> ParseFormat(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

void ValidateConfig(const RunConfig& config) {
  auto usage = [](const std::string& msg, const char* field) {
    throw Error(ErrorCode::kInvalidArgument, msg, field);
  };
  if (config.game_path.empty()) usage("a game file is required", "game");
  if (!(config.resolution > 0.0 && config.resolution <= 0.5))
    usage("must lie in (0, 0.5]", "resolution");
  const bool campaign =
      config.command == Command::kVerifyTheorem || config.command == Command::kSearchGain;
  if (config.format == ReportFormat::kCsv && !campaign)
    usage("csv output is only available for verify-theorem and search-gain", "format");
  if ((config.command == Command::kCheckObedience || config.command == Command::kCanonicalize) &&
      config.experiment_path.empty())
    usage(std::string(CommandName(config.command)) + " needs an experiment file", "experiment");
  if (config.command == Command::kCanonicalize && config.strategy_path.empty())
    usage("canonicalize needs a receiver strategy file", "strategy");
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kPrecondition:
      return 2;
    case ErrorCode::kTheoremViolation:
      return 3;
    case ErrorCode::kLpFailure:
    case ErrorCode::kInternal:
      return 4;
  }
  return 4;
}

std::size_t WorkerThreads() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PERSUASION_LAB_THREADS")) {
    std::size_t cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && ptr == end && cap > 0) n = std::min(n, cap);
  }
  return n;
}

TheoremCheck CheckTheoremInstance(const AmbiguousExperiment& sigma, const GameSpec& game) {
  TheoremCheck out;
  const BinaryNormalization norm = Normalize(game);
  if (norm.degenerate) {
    out.degenerate = true;
    if (!AmbiguousObedience(sigma, game))
      throw Error(ErrorCode::kPrecondition, "ambiguous experiment is not obedient");
    out.holds = HasObedientMember(sigma, game);
    if (!out.holds) out.failures.push_back("no obedient member found in a degenerate game");
    return out;
  }

  DecompositionWitness w;
  try {
    w = ConstructSigmaHat(sigma, game);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTheoremViolation) throw;
    out.failures.push_back(e.what());
    return out;
  }
  out.witness = w;

  std::vector<std::array<double, 2>> points;
  for (const auto& g : sigma.generators()) {
    const auto b = BinaryExperiment::FromCanonical(g);
    points.push_back({b.x, b.y});
  }
  if (!InConvexHull2D(points, {w.sigma_hat.x, w.sigma_hat.y}, kHullTol))
    out.failures.push_back("sigma_hat lies outside the hull of the generators");

  const StatisticalExperiment hat = w.sigma_hat.ToCanonical(game);
  if (!StatisticalObedience(hat, game)) out.failures.push_back("sigma_hat is not obedient");

  // With weight on both endpoints the mixture must flatten the receiver's line.
  const bool has_lower = w.alpha > 0.0, has_upper = w.alpha < 1.0;
  const double width = w.p_upper - w.p_lower;
  if (width > kRepresentationTol && has_lower && has_upper &&
      std::abs(w.slope_hat) > 2.0 * kFeasibilityTol * norm.scale / width)
    out.failures.push_back("M(sigma_hat) is not zero");

  // Phi in payoff units; the endpoint aggregates maximize Phi over Sigma at
  // their own endpoint, so any member (sigma_hat included) sits below them.
  const double tol = kFeasibilityTol * norm.scale;
  auto phi = [&](double p, const BinaryExperiment& s) { return Phi(p, s, norm).ab; };
  if ((has_lower && phi(w.p_lower, w.sigma_hat) > phi(w.p_lower, w.sigma_lower) + tol) ||
      (has_upper && phi(w.p_upper, w.sigma_hat) > phi(w.p_upper, w.sigma_upper) + tol))
    out.failures.push_back("Phi at an endpoint exceeds the endpoint aggregate");
  for (const auto& p : points) {
    const BinaryExperiment g{p[0], p[1]};
    if ((has_lower && phi(w.p_lower, g) > phi(w.p_lower, w.sigma_lower) + tol) ||
        (has_upper && phi(w.p_upper, g) > phi(w.p_upper, w.sigma_upper) + tol)) {
      out.failures.push_back("a generator exceeds Phi of the endpoint aggregate");
      break;
    }
  }

  const auto single = AmbiguousExperiment::Create({hat});
  if (!IsBestResponse(ReceiverStrategy::Obedient(game.num_actions()), single, game))
    out.failures.push_back("obedience is not a best response to sigma_hat");

  out.holds = out.failures.empty();
  return out;
}

TheoremCampaign VerifyTheoremCampaign(const GameSpec& game, std::uint64_t budget, std::uint64_t seed,
                                      std::size_t threads) {
  if (!game.is_binary())
    throw Error(ErrorCode::kPrecondition, "verify-theorem needs a game with two states and two actions");
  TheoremCampaign c;
  c.trials = budget;
  c.rows.resize(budget);
  ParallelFor(budget, threads, [&](std::size_t t) {
    TheoremTrial& row = c.rows[t];
    row.trial = t;
    row.seed = TrialSeed(seed, t);
    Rng rng(row.seed);
    row.n_generators = 2 + rng.Index(4);
    auto sigma = SampleObedientAmbiguous(game, SplitMix64(row.seed), row.n_generators, kMaxRetries);
    if (!sigma) return;
    row.sampled = true;
    row.check = CheckTheoremInstance(*sigma, game);
  });
  for (const auto& row : c.rows) {
    if (!row.sampled) continue;
    ++c.sampled;
    if (!row.check.holds) ++c.violations;
  }
  return c;
}

Json TheoremCampaignToJson(const TheoremCampaign& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    Json row = {{"seed", r.seed},
                {"trial", r.trial},
                {"n_generators", r.n_generators},
                {"sampled", r.sampled}};
    if (r.sampled) {
      row["holds"] = r.check.holds;
      row["degenerate"] = r.check.degenerate;
      row["failures"] = r.check.failures;
      row["witness"] = r.check.witness ? DecompositionToJson(*r.check.witness) : Json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  return {{"trials", c.trials},
          {"sampled", c.sampled},
          {"violations", c.violations},
          {"rows", rows}};
}

std::string TheoremCampaignCsv(const TheoremCampaign& c) {
  std::string out = "seed,trial,n_generators,sampled,holds,lambda,p_alpha\n";
  char buf[64];
  for (const auto& r : c.rows) {
    out += std::to_string(r.seed) + "," + std::to_string(r.trial) + "," +
           std::to_string(r.n_generators) + "," + (r.sampled ? "1" : "0") + ",";
    if (r.sampled) out += r.check.holds ? "1" : "0";
    out += ",";
    if (r.check.witness) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", r.check.witness->lambda,
                    r.check.witness->p_alpha);
      out += buf;
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

Json SolveReport(const GameSpec& game, double resolution, const AmbiguousExperiment* sigma) {
  SolveOptions options;
  options.resolution = resolution;
  const SenderSolution sol = OptimalStatisticalValue(game, options);
  Json out = {{"statistical", SenderSolutionToJson(sol)}};
  if (sigma) {
    RequireCanonical(*sigma, game);
    const auto value = AmbiguousSenderValue(*sigma, game);
    Json amb = {{"obedient", value.has_value()},
                {"value", value ? Json(*value) : Json(nullptr)},
                {"gain", value ? Json(*value - sol.value) : Json(nullptr)}};
    out["ambiguous"] = amb;
  }
  return out;
}

Json CheckObedienceReport(const AmbiguousExperiment& sigma, const GameSpec& game) {
  RequireCanonical(sigma, game);
  Json out;
  if (sigma.size() == 1) {
    const auto face = WorstCasePriors(sigma.generator(0), game);
    const auto w = StatisticalObedience(sigma.generator(0), game);
    out["statistical"] = {{"obedient", w.has_value()},
                          {"worst_case_priors", face.vertex_indices},
                          {"worst_case_value", face.value},
                          {"witness", w ? WitnessToJson(*w) : Json(nullptr)}};
  }
  const KStarFace kstar = KStar(sigma, game);
  const auto w = AmbiguousObedience(sigma, game);
  out["ambiguous"] = {{"obedient", w.has_value()},
                      {"k_star_value", kstar.value},
                      {"k_star_pairs", PairsJson(kstar.minimizing_pairs)},
                      {"witness", w ? WitnessToJson(*w) : Json(nullptr)}};
  const BestResponseResult br = ReceiverBestResponse(sigma, game);
  out["best_response"] = BestResponseToJson(br);
  out["obedience_is_best_response"] =
      IsBestResponse(ReceiverStrategy::Obedient(game.num_actions()), sigma, game);
  return out;
}

Json CanonicalizeReport(const AmbiguousExperiment& sigma, const ReceiverStrategy& tau,
                        const GameSpec& game) {
  if (sigma.generator(0).num_states() != game.num_states())
    throw Error(ErrorCode::kDimensionMismatch, "experiment rows do not match the game's states");
  if (tau.num_messages() != sigma.messages().size())
    throw Error(ErrorCode::kDimensionMismatch, "strategy rows do not match the experiment's messages",
                "kernel");
  if (tau.num_actions() != game.num_actions())
    throw Error(ErrorCode::kDimensionMismatch, "strategy columns do not match the game's actions",
                "kernel");
  return ExperimentToJson(Canonicalize(sigma, tau, game.actions));
}

}  // namespace persuasion
