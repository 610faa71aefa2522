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

// Batch commands behind the CLI. Each returns the report text; every random
// draw derives from the run seed via TrialSeed, so identical inputs give
// identical bytes regardless of thread count.

#ifndef PERSUASION_HARNESS_HPP_
#define PERSUASION_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "persuasion/binary.hpp"
#include "persuasion/io.hpp"
#include "persuasion/model.hpp"
#include "persuasion/sender.hpp"

namespace persuasion {

enum class Command { kSolve, kCheckObedience, kVerifyTheorem, kSearchGain, kCanonicalize };
enum class ReportFormat { kJson, kCsv };

const char* CommandName(Command command);
std::optional<Command> ParseCommand(const std::string& name);
std::optional<ReportFormat> ParseFormat(const std::string& name);

struct RunConfig {
  Command command = Command::kSolve;
  std::string game_path;
  std::string experiment_path;  // check-obedience, canonicalize, optional for solve
  std::string strategy_path;    // canonicalize
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000;
  double resolution = 1e-3;
  std::string output_path;  // empty: standard output
  ReportFormat format = ReportFormat::kJson;
};

// Throws kInvalidArgument (a usage error) for a bad combination of fields.
void ValidateConfig(const RunConfig& config);

// Process exit status for a library error: 2 data, 3 theorem-violation, 4 internal.
int ExitCodeFor(ErrorCode code);
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;

// Worker count: hardware concurrency, capped by PERSUASION_LAB_THREADS if set.
std::size_t WorkerThreads();

// Outcome of checking the no-gain construction on one obedient experiment.
struct TheoremCheck {
  bool holds = false;
  bool degenerate = false;
  std::optional<DecompositionWitness> witness;
  std::vector<std::string> failures;
};

// For 2x2 games. Non-degenerate: runs ConstructSigmaHat and re-verifies hull
// membership, statistical obedience, M(sigma_hat) = 0, the endpoint
// monotonicity of Phi and the best-response property of obedience. Degenerate:
// searches for an obedient member. Throws kPrecondition if sigma is not obedient.
TheoremCheck CheckTheoremInstance(const AmbiguousExperiment& sigma, const GameSpec& game);

struct TheoremTrial {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::size_t n_generators = 0;
  bool sampled = false;  // an obedient experiment was found within the retry budget
  TheoremCheck check;
};

struct TheoremCampaign {
  std::size_t trials = 0;
  std::size_t sampled = 0;
  std::size_t violations = 0;
  std::vector<TheoremTrial> rows;
};

TheoremCampaign VerifyTheoremCampaign(const GameSpec& game, std::uint64_t budget, std::uint64_t seed,
                                      std::size_t threads);

Json TheoremCampaignToJson(const TheoremCampaign& c);
std::string TheoremCampaignCsv(const TheoremCampaign& c);

// Report builders for the remaining commands.
Json SolveReport(const GameSpec& game, double resolution, const AmbiguousExperiment* sigma);
// Throws kPrecondition with guidance when sigma is not canonical.
Json CheckObedienceReport(const AmbiguousExperiment& sigma, const GameSpec& game);
Json CanonicalizeReport(const AmbiguousExperiment& sigma, const ReceiverStrategy& tau,
                        const GameSpec& game);

}  // namespace persuasion

#endif  // PERSUASION_HARNESS_HPP_
