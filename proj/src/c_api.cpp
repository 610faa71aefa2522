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

#include "persuasion/persuasion.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "persuasion/harness.hpp"
#include "persuasion/io.hpp"

struct pl_game {
  persuasion::GameSpec value;
};
struct pl_experiment {
  persuasion::AmbiguousExperiment value;
};
struct pl_strategy {
  persuasion::ReceiverStrategy value;
};

namespace {

thread_local std::string g_last_error;

pl_status StatusFor(persuasion::ErrorCode code) {
  using persuasion::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return PL_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return PL_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kPrecondition: return PL_ERR_PRECONDITION;
    case ErrorCode::kLpFailure: return PL_ERR_LP_FAILURE;
    case ErrorCode::kTheoremViolation: return PL_ERR_THEOREM_VIOLATION;
    case ErrorCode::kInternal: return PL_ERR_INTERNAL;
  }
  return PL_ERR_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread's last error.
template <class Fn>
pl_status Guard(Fn&& fn) {
  try {
    fn();
    return PL_OK;
  } catch (const persuasion::Error& e) {
    g_last_error = e.what();
    return StatusFor(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return PL_ERR_INTERNAL;
  }
}

pl_status NullArgument(const char* name) {
  g_last_error = std::string(name) + " must not be NULL";
  return PL_ERR_NULL_ARGUMENT;
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string Dump(const persuasion::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

extern "C" {

const char* pl_status_name(pl_status status) {
  switch (status) {
    case PL_OK: return "ok";
    case PL_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PL_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case PL_ERR_PRECONDITION: return "precondition";
    case PL_ERR_LP_FAILURE: return "lp-failure";
    case PL_ERR_THEOREM_VIOLATION: return "theorem-violation";
    case PL_ERR_INTERNAL: return "internal";
    case PL_ERR_NULL_ARGUMENT: return "null-argument";
  }
  return "unknown";
}

const char* pl_last_error(void) { return g_last_error.c_str(); }

int pl_exit_code(pl_status status) {
  switch (status) {
    case PL_OK: return 0;
    case PL_ERR_INVALID_ARGUMENT:
    case PL_ERR_DIMENSION_MISMATCH:
    case PL_ERR_PRECONDITION:
      return 2;
    case PL_ERR_THEOREM_VIOLATION: return 3;
    default: return 4;
  }
}

void pl_string_free(char* s) { std::free(s); }

pl_status pl_game_load(const char* path, pl_game** out) {
  if (!path) return NullArgument("path");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = new pl_game{persuasion::LoadGame(path)}; });
}

pl_status pl_game_from_json(const char* json, pl_game** out) {
  if (!json) return NullArgument("json");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new pl_game{persuasion::GameFromJson(persuasion::ParseJsonText(json, "<game>"))};
  });
}

pl_status pl_game_to_json(const pl_game* game, char** out) {
  if (!game) return NullArgument("game");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = Duplicate(Dump(persuasion::GameToJson(game->value))); });
}

pl_status pl_game_dims(const pl_game* game, size_t* num_states, size_t* num_actions) {
  if (!game) return NullArgument("game");
  if (num_states) *num_states = game->value.num_states();
  if (num_actions) *num_actions = game->value.num_actions();
  return PL_OK;
}

void pl_game_free(pl_game* game) { delete game; }

pl_status pl_experiment_load(const pl_game* game, const char* path, pl_experiment** out) {
  if (!game) return NullArgument("game");
  if (!path) return NullArgument("path");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new pl_experiment{
        persuasion::ExperimentFromJson(persuasion::ReadJsonFile(path), game->value)};
  });
}

pl_status pl_experiment_from_json(const pl_game* game, const char* json, pl_experiment** out) {
  if (!game) return NullArgument("game");
  if (!json) return NullArgument("json");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new pl_experiment{persuasion::ExperimentFromJson(
        persuasion::ParseJsonText(json, "<experiment>"), game->value)};
  });
}

void pl_experiment_free(pl_experiment* experiment) { delete experiment; }

pl_status pl_strategy_load(const char* path, pl_strategy** out) {
  if (!path) return NullArgument("path");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new pl_strategy{persuasion::StrategyFromJson(persuasion::ReadJsonFile(path))};
  });
}

pl_status pl_strategy_from_json(const char* json, pl_strategy** out) {
  if (!json) return NullArgument("json");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new pl_strategy{
        persuasion::StrategyFromJson(persuasion::ParseJsonText(json, "<strategy>"))};
  });
}

void pl_strategy_free(pl_strategy* strategy) { delete strategy; }

pl_status pl_solve(const pl_game* game, double resolution, const pl_experiment* experiment,
                   char** report) {
  if (!game) return NullArgument("game");
  if (!report) return NullArgument("report");
  *report = nullptr;
  return Guard([&] {
    const auto* sigma = experiment ? &experiment->value : nullptr;
    *report = Duplicate(Dump(persuasion::SolveReport(game->value, resolution, sigma)));
  });
}

pl_status pl_check_obedience(const pl_game* game, const pl_experiment* experiment, char** report) {
  if (!game) return NullArgument("game");
  if (!experiment) return NullArgument("experiment");
  if (!report) return NullArgument("report");
  *report = nullptr;
  return Guard([&] {
    *report = Duplicate(Dump(persuasion::CheckObedienceReport(experiment->value, game->value)));
  });
}

pl_status pl_canonicalize(const pl_game* game, const pl_experiment* experiment,
                          const pl_strategy* strategy, char** report) {
  if (!game) return NullArgument("game");
  if (!experiment) return NullArgument("experiment");
  if (!strategy) return NullArgument("strategy");
  if (!report) return NullArgument("report");
  *report = nullptr;
  return Guard([&] {
    *report = Duplicate(Dump(
        persuasion::CanonicalizeReport(experiment->value, strategy->value, game->value)));
  });
}

pl_status pl_verify_theorem(const pl_game* game, uint64_t seed, uint64_t budget, pl_format format,
                            char** report, uint64_t* violations) {
  if (!game) return NullArgument("game");
  if (!report) return NullArgument("report");
  *report = nullptr;
  return Guard([&] {
    const auto campaign = persuasion::VerifyTheoremCampaign(game->value, budget, seed,
                                                            persuasion::WorkerThreads());
    *report = Duplicate(format == PL_FORMAT_CSV ? persuasion::TheoremCampaignCsv(campaign)
                                                : Dump(persuasion::TheoremCampaignToJson(campaign)));
    if (violations) *violations = campaign.violations;
  });
}

pl_status pl_search_gain(const pl_game* game, uint64_t seed, uint64_t budget, double resolution,
                         pl_format format, char** report) {
  if (!game) return NullArgument("game");
  if (!report) return NullArgument("report");
  *report = nullptr;
  return Guard([&] {
    persuasion::GainSearchOptions options;
    options.solve.resolution = resolution;
    options.threads = persuasion::WorkerThreads();
    const auto gain = persuasion::GainSearch(game->value, budget, seed, options);
    *report = Duplicate(format == PL_FORMAT_CSV ? persuasion::GainReportCsv(gain)
                                                : Dump(persuasion::GainReportToJson(gain)));
  });
}

}  // extern "C"
