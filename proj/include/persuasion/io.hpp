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

// JSON file formats.
//
// Game:
//   {"states": [...], "actions": [...],
//    "sender_payoff": [[...]], "receiver_payoff": [[...]],   // rows = actions
//    "prior_vertices": [[...]]}                               // rows on the simplex
//
// Experiment (one or more generators; "messages" defaults to the game's actions):
//   {"messages": [...], "generators": [[[...], ...], ...]}   // each (state, message)
//   {"messages": [...], "kernel": [[...], ...]}              // single generator
//
// Receiver strategy:
//   {"kernel": [[...], ...]}                                  // (message, action)
//
// Parse failures throw Error(kInvalidArgument) whose path names the field.

#ifndef PERSUASION_IO_HPP_
#define PERSUASION_IO_HPP_

#include <string>

#include "json.hpp"
#include "persuasion/binary.hpp"
#include "persuasion/minimax.hpp"
#include "persuasion/model.hpp"
#include "persuasion/obedience.hpp"
#include "persuasion/sender.hpp"

namespace persuasion {

using Json = nlohmann::json;

Json ParseJsonText(const std::string& text, const std::string& what);
Json ReadJsonFile(const std::string& path);

GameSpec GameFromJson(const Json& j);
Json GameToJson(const GameSpec& game);
GameSpec LoadGame(const std::string& path);

AmbiguousExperiment ExperimentFromJson(const Json& j, const GameSpec& game);
Json ExperimentToJson(const AmbiguousExperiment& sigma);

ReceiverStrategy StrategyFromJson(const Json& j);
Json StrategyToJson(const ReceiverStrategy& tau);

Json WitnessToJson(const ObedienceWitness& w);
Json DecompositionToJson(const DecompositionWitness& w);
Json BestResponseToJson(const BestResponseResult& r);
Json SenderSolutionToJson(const SenderSolution& s);
Json GainReportToJson(const GainReport& r);
// One row per trial: seed,trial,obedient,sender_value.
std::string GainReportCsv(const GainReport& r);

}  // namespace persuasion

#endif  // PERSUASION_IO_HPP_
