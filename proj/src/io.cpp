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

#include "persuasion/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace persuasion {

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message, path);
}

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object()) Fail("<root>", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) Fail(name, "missing required field");
  return *it;
}

Labels ParseLabels(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of strings");
  Labels out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) Fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<double> ParseVector(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) Fail(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

std::vector<std::vector<double>> ParseRows(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i)
    rows.push_back(ParseVector(j[i], path + "[" + std::to_string(i) + "]"));
  return rows;
}

Matrix ParseMatrix(const Json& j, const std::string& path) {
  auto rows = ParseRows(j, path);
  if (rows.empty()) Fail(path, "expected at least one row");
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].size() != rows[0].size())
      Fail(path + "[" + std::to_string(i) + "]", "ragged row");
  return Matrix::FromRows(rows);
}

Json MatrixToJson(const Matrix& m) { return Json(m.ToRows()); }

Json Pairs(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Json out = Json::array();
  for (auto [i, j] : pairs) out.push_back({{"prior_vertex", i}, {"generator", j}});
  return out;
}

Json BinaryToJson(const BinaryExperiment& s) { return Json::array({s.x, s.y}); }

// Keeps CSV numbers round-trippable without locale dependence.
std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Json ParseJsonText(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail(what, std::string("JSON parse error: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseJsonText(buf.str(), path);
}

GameSpec GameFromJson(const Json& j) {
  Labels states = ParseLabels(Field(j, "states"), "states");
  Labels actions = ParseLabels(Field(j, "actions"), "actions");
  Matrix sender = ParseMatrix(Field(j, "sender_payoff"), "sender_payoff");
  Matrix receiver = ParseMatrix(Field(j, "receiver_payoff"), "receiver_payoff");
  auto vertices = ParseRows(Field(j, "prior_vertices"), "prior_vertices");
  return GameSpec::Create(std::move(states), std::move(actions), std::move(sender),
                          std::move(receiver), PriorSet::Create(std::move(vertices)));
}

Json GameToJson(const GameSpec& game) {
  return {{"states", game.states},
          {"actions", game.actions},
          {"sender_payoff", MatrixToJson(game.sender_payoff)},
          {"receiver_payoff", MatrixToJson(game.receiver_payoff)},
          {"prior_vertices", game.priors.vertices()}};
}

GameSpec LoadGame(const std::string& path) { return GameFromJson(ReadJsonFile(path)); }

AmbiguousExperiment ExperimentFromJson(const Json& j, const GameSpec& game) {
  if (!j.is_object()) Fail("<root>", "expected a JSON object");
  Labels messages = j.contains("messages") ? ParseLabels(j["messages"], "messages") : game.actions;
  std::vector<Matrix> kernels;
  if (j.contains("generators")) {
    const Json& g = j["generators"];
    if (!g.is_array() || g.empty()) Fail("generators", "expected a nonempty array of kernels");
    for (std::size_t i = 0; i < g.size(); ++i)
      kernels.push_back(ParseMatrix(g[i], "generators[" + std::to_string(i) + "]"));
  } else if (j.contains("kernel")) {
    kernels.push_back(ParseMatrix(j["kernel"], "kernel"));
  } else {
    Fail("generators", "missing required field (or \"kernel\")");
  }
  std::vector<StatisticalExperiment> gens;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const std::string path =
        j.contains("generators") ? "generators[" + std::to_string(i) + "]" : std::string("kernel");
    if (kernels[i].rows() != game.num_states())
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected one row per state (" + std::to_string(game.num_states()) + ")", path);
    if (kernels[i].cols() != messages.size())
      throw Error(ErrorCode::kDimensionMismatch,
                  "expected one column per message (" + std::to_string(messages.size()) + ")",
                  path);
    try {
      gens.push_back(StatisticalExperiment::Create(messages, std::move(kernels[i])));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), path);
    }
  }
  return AmbiguousExperiment::Create(std::move(gens));
}

Json ExperimentToJson(const AmbiguousExperiment& sigma) {
  Json gens = Json::array();
  for (const auto& g : sigma.generators()) gens.push_back(MatrixToJson(g.kernel()));
  return {{"messages", sigma.messages()}, {"generators", gens}};
}

ReceiverStrategy StrategyFromJson(const Json& j) {
  return ReceiverStrategy::Create(ParseMatrix(Field(j, "kernel"), "kernel"));
}

Json StrategyToJson(const ReceiverStrategy& tau) { return {{"kernel", MatrixToJson(tau.kernel())}}; }

Json WitnessToJson(const ObedienceWitness& w) {
  Json weights = Json::array();
  for (const auto& fw : w.face_weights)
    weights.push_back({{"prior_vertex", fw.prior_vertex}, {"generator", fw.generator}, {"w", fw.weight}});
  Json out = {{"kind", WitnessKindName(w.kind)},
              {"prior", w.prior ? Json(*w.prior) : Json(nullptr)},
              {"weights", weights},
              {"joint", MatrixToJson(w.joint)},
              {"slack", MatrixToJson(w.slack)},
              {"margin", w.margin}};
  return out;
}

Json DecompositionToJson(const DecompositionWitness& w) {
  return {{"sigma_lower", BinaryToJson(w.sigma_lower)},
          {"sigma_upper", BinaryToJson(w.sigma_upper)},
          {"alpha", w.alpha},
          {"p_alpha", w.p_alpha},
          {"lambda", w.lambda},
          {"sigma_hat", BinaryToJson(w.sigma_hat)},
          {"k", w.k},
          {"slope_lower", w.slope_lower},
          {"slope_upper", w.slope_upper},
          {"slope_hat", w.slope_hat},
          {"phi_hat", w.phi_hat},
          {"p_lower", w.p_lower},
          {"p_upper", w.p_upper}};
}

Json BestResponseToJson(const BestResponseResult& r) {
  return {{"value", r.value},
          {"optimal_strategy", MatrixToJson(r.optimal_strategy.kernel())},
          {"active_constraints", Pairs(r.active_constraints)}};
}

Json SenderSolutionToJson(const SenderSolution& s) {
  return {{"value", s.value},
          {"method", SolveMethodName(s.method)},
          {"approximate", s.approximate},
          {"grid_value", s.grid_value},
          {"experiment", ExperimentToJson(s.experiment)},
          {"witness", WitnessToJson(s.witness)}};
}

Json GainReportToJson(const GainReport& r) {
  Json rows = Json::array();
  for (const auto& t : r.rows) {
    rows.push_back({{"seed", t.seed},
                    {"trial", t.trial},
                    {"n_generators", t.n_generators},
                    {"obedient", t.obedient},
                    {"sender_value", t.sender_value ? Json(*t.sender_value) : Json(nullptr)},
                    {"lemma2_candidate", t.lemma2_candidate}});
  }
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  return {{"v_stat", r.v_stat},
          {"v_stat_method", SolveMethodName(r.v_stat_method)},
          {"v_stat_approximate", r.v_stat_approximate},
          {"best_ambiguous", opt(r.best_ambiguous)},
          {"gap", opt(r.gap)},
          {"trials", r.trials},
          {"obedient_trials", r.obedient_trials},
          {"lemma2_candidates", r.lemma2_candidates},
          {"bound_asserted", r.bound_asserted},
          {"bound_holds", r.bound_holds},
          {"rows", rows}};
}

std::string GainReportCsv(const GainReport& r) {
  std::string out = "seed,trial,obedient,sender_value\n";
  for (const auto& t : r.rows) {
    out += std::to_string(t.seed) + "," + std::to_string(t.trial) + "," +
           (t.obedient ? "1" : "0") + "," + (t.sender_value ? FormatDouble(*t.sender_value) : "") +
           "\n";
  }
  return out;
}

}  // namespace persuasion
