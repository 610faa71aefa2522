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

// persuasion-lab: batch front end over the C interface.
//
//   persuasion-lab solve            --game G [--experiment E] [--resolution R]
//   persuasion-lab check-obedience  --game G --experiment E
//   persuasion-lab canonicalize     --game G --experiment E --strategy T
//   persuasion-lab verify-theorem   --game G --seed N --budget N [--format csv]
//   persuasion-lab search-gain      --game G --seed N --budget N [--format csv]
//
// Exit status: 0 ok, 1 usage, 2 data, 3 theorem-violation, 4 internal.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "persuasion/persuasion.h"

namespace {

constexpr int kExitUsage = 1;

struct Options {
  std::string command;
  std::string game;
  std::string experiment;
  std::string strategy;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000;
  double resolution = 1e-3;
  std::string out;
  std::string format = "json";
};

struct GameDeleter {
  void operator()(pl_game* g) const { pl_game_free(g); }
};
struct ExperimentDeleter {
  void operator()(pl_experiment* e) const { pl_experiment_free(e); }
};
struct StrategyDeleter {
  void operator()(pl_strategy* s) const { pl_strategy_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { pl_string_free(s); }
};

int Fail(pl_status status) {
  std::cerr << "persuasion-lab: " << pl_status_name(status) << ": " << pl_last_error() << "\n";
  return pl_exit_code(status);
}

int Usage(const std::string& message) {
  std::cerr << "persuasion-lab: usage: " << message << "\n";
  return kExitUsage;
}

bool Emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fputs(text, stdout);
    return std::fflush(stdout) == 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int Run(const Options& o) {
  const bool campaign = o.command == "verify-theorem" || o.command == "search-gain";
  if (o.format == "csv" && !campaign)
    return Usage("--format csv is only available for verify-theorem and search-gain");
  if ((o.command == "check-obedience" || o.command == "canonicalize") && o.experiment.empty())
    return Usage(o.command + " needs --experiment");
  if (o.command == "canonicalize" && o.strategy.empty())
    return Usage("canonicalize needs --strategy");

  pl_game* raw_game = nullptr;
  if (pl_status s = pl_game_load(o.game.c_str(), &raw_game); s != PL_OK) return Fail(s);
  std::unique_ptr<pl_game, GameDeleter> game(raw_game);

  std::unique_ptr<pl_experiment, ExperimentDeleter> experiment;
  if (!o.experiment.empty()) {
    pl_experiment* raw = nullptr;
    if (pl_status s = pl_experiment_load(game.get(), o.experiment.c_str(), &raw); s != PL_OK)
      return Fail(s);
    experiment.reset(raw);
  }
  std::unique_ptr<pl_strategy, StrategyDeleter> strategy;
  if (!o.strategy.empty()) {
    pl_strategy* raw = nullptr;
    if (pl_status s = pl_strategy_load(o.strategy.c_str(), &raw); s != PL_OK) return Fail(s);
    strategy.reset(raw);
  }

  const pl_format format = o.format == "csv" ? PL_FORMAT_CSV : PL_FORMAT_JSON;
  char* raw_report = nullptr;
  std::uint64_t violations = 0;
  pl_status status = PL_OK;
  if (o.command == "solve") {
    status = pl_solve(game.get(), o.resolution, experiment.get(), &raw_report);
  } else if (o.command == "check-obedience") {
    status = pl_check_obedience(game.get(), experiment.get(), &raw_report);
  } else if (o.command == "canonicalize") {
    status = pl_canonicalize(game.get(), experiment.get(), strategy.get(), &raw_report);
  } else if (o.command == "verify-theorem") {
    status = pl_verify_theorem(game.get(), o.seed, o.budget, format, &raw_report, &violations);
  } else {
    status = pl_search_gain(game.get(), o.seed, o.budget, o.resolution, format, &raw_report);
  }
  std::unique_ptr<char, StringDeleter> report(raw_report);
  if (status != PL_OK) return Fail(status);
  if (!Emit(o.out, report.get())) {
    std::cerr << "persuasion-lab: cannot write " << o.out << "\n";
    return pl_exit_code(PL_ERR_INVALID_ARGUMENT);
  }
  if (violations > 0) {
    std::cerr << "persuasion-lab: theorem-violation: " << violations << " instance(s) failed\n";
    return pl_exit_code(PL_ERR_THEOREM_VIOLATION);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Persuasion with a set of priors: solvers and verification campaigns"};
  app.add_option("command", o.command, "solve | check-obedience | verify-theorem | search-gain | canonicalize")
      ->required()
      ->check(CLI::IsMember(
          {"solve", "check-obedience", "verify-theorem", "search-gain", "canonicalize"}));
  app.add_option("--game", o.game, "game JSON file")->required();
  app.add_option("--experiment", o.experiment, "experiment JSON file");
  app.add_option("--strategy", o.strategy, "receiver strategy JSON file");
  app.add_option("--seed", o.seed, "campaign seed")->capture_default_str();
  app.add_option("--budget", o.budget, "number of trials")->capture_default_str();
  app.add_option("--resolution", o.resolution, "grid step in (0, 0.5]")
      ->capture_default_str()
      ->check([](const std::string& s) -> std::string {
        try {
          std::size_t used = 0;
          const double r = std::stod(s, &used);
          if (used == s.size() && r > 0.0 && r <= 0.5) return {};
        } catch (const std::exception&) {
        }
        return "resolution must lie in (0, 0.5]";
      });
  app.add_option("--out", o.out, "report file (default: standard output)");
  app.add_option("--format", o.format, "json | csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  return Run(o);
}
