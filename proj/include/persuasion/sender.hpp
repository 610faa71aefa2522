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

// Sender programs over canonical experiments with the obedient receiver.
//
//   statistical:  max_sigma  min_p u_s(p, sigma, obedient)  s.t. sigma obedient
//   ambiguous:    max_Sigma  min_{p, sigma in Sigma} u_s     s.t. Sigma obedient
//
// Ambiguity benefits the sender when the second value strictly exceeds the
// first. The statistical program is solved by a grid over canonical kernels
// with local refinement; for 2x2 games the refined grid is followed by an
// exact solve of the three linear programs that partition the obedient set
// by worst-case prior (p_L, p_U, or the flat line between them).

#ifndef PERSUASION_SENDER_HPP_
#define PERSUASION_SENDER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "persuasion/model.hpp"
#include "persuasion/obedience.hpp"
#include "persuasion/random.hpp"

namespace persuasion {

enum class SolveMethod { kGrid, kRefinedGrid, kEnumerated };
const char* SolveMethodName(SolveMethod method);

struct SolveOptions {
  double resolution = 1e-3;
  int refinement_rounds = 2;
  // Grid caps; the step is coarsened until the grid fits.
  std::size_t max_fast_grid_points = 4'000'000;  // two-state games
  std::size_t max_lp_grid_points = 60'000;       // three or more states
};

struct SenderSolution {
  double value = 0.0;
  AmbiguousExperiment experiment;  // one generator for the statistical program
  ObedienceWitness witness;
  SolveMethod method = SolveMethod::kGrid;
  bool approximate = true;  // false only when the exact 2x2 solve is used
  double grid_value = 0.0;  // best refined-grid value, kept for diagnostics
};

// Throws kInternal if no grid kernel is obedient, which cannot happen for a
// valid game (recommending a receiver-optimal action in each state is obedient).
SenderSolution OptimalStatisticalValue(const GameSpec& game, const SolveOptions& options = {});

// Exact value of the statistical program for 2x2 games (no grid). Returns the
// optimal kernel and value; throws kPrecondition for other games.
std::optional<std::pair<StatisticalExperiment, double>> ExactBinaryStatisticalOptimum(
    const GameSpec& game);

// Sender's maxmin value of an obedient ambiguous experiment; absent otherwise.
std::optional<double> AmbiguousSenderValue(const AmbiguousExperiment& sigma, const GameSpec& game);

enum class SamplerKind { kUniformRows, kDirichlet };

struct SamplerConfig {
  SamplerKind kind = SamplerKind::kUniformRows;
  double concentration = 1.0;  // Dirichlet only
};

// Rows drawn componentwise uniform and normalized (or Dirichlet).
StatisticalExperiment SampleCanonicalExperiment(const GameSpec& game, Rng& rng,
                                                const SamplerConfig& sampler = {});

// Rejection sampling, deterministic in `seed`. Absent after max_retries draws.
std::optional<AmbiguousExperiment> SampleObedientAmbiguous(const GameSpec& game, std::uint64_t seed,
                                                           std::size_t n_generators,
                                                           std::size_t max_retries = 200,
                                                           const SamplerConfig& sampler = {});

// Looks for an obedient statistical member of an obedient Sigma: generators,
// witness-weighted aggregates per prior vertex, a grid of pairwise mixtures
// and, for non-degenerate 2x2 games, the sigma-hat construction.
bool HasObedientMember(const AmbiguousExperiment& sigma, const GameSpec& game,
                       std::size_t mixture_grid = 20);

struct TrialRecord {
  std::uint64_t seed = 0;  // per-trial seed
  std::uint64_t trial = 0;
  std::size_t n_generators = 0;
  bool obedient = false;
  std::optional<double> sender_value;
  bool lemma2_candidate = false;
};

struct GainReport {
  double v_stat = 0.0;
  SolveMethod v_stat_method = SolveMethod::kGrid;
  bool v_stat_approximate = true;
  std::optional<double> best_ambiguous;
  std::optional<double> gap;  // best_ambiguous - v_stat
  std::size_t trials = 0;
  std::size_t obedient_trials = 0;
  std::size_t lemma2_candidates = 0;
  bool bound_asserted = false;  // 2x2 games: gap <= kValueTol is a theorem
  bool bound_holds = true;
  std::vector<TrialRecord> rows;
};

struct GainSearchOptions {
  SolveOptions solve;
  std::size_t min_generators = 2;
  std::size_t max_generators = 5;
  std::size_t max_retries = 200;
  std::size_t mixture_grid = 20;
  SamplerConfig sampler;
  std::size_t threads = 1;
};

GainReport GainSearch(const GameSpec& game, std::size_t budget, std::uint64_t seed,
                      const GainSearchOptions& options = {});

}  // namespace persuasion

#endif  // PERSUASION_SENDER_HPP_
