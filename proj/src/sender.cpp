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

#include "persuasion/sender.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "persuasion/binary.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/parallel.hpp"

namespace persuasion {
namespace {

constexpr std::size_t kTopCandidates = 4;

using Evaluator = std::function<std::optional<double>(const Matrix&)>;

// Sender value of an obedient two-state kernel, or nothing. Mirrors
// ObedientPriorInterval without building experiment objects, which matters
// on million-point grids.
class TwoStateEvaluator {
 public:
  explicit TwoStateEvaluator(const GameSpec& game) : game_(game) {
    for (const auto& v : game.priors.vertices()) p_.push_back(v[0]);
  }

  std::optional<double> operator()(const Matrix& k) const {
    const Matrix& ur = game_.receiver_payoff;
    const Matrix& us = game_.sender_payoff;
    const std::size_t na = game_.num_actions();
    double r0 = 0.0, r1 = 0.0, s0 = 0.0, s1 = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      r0 += k(0, a) * ur(a, 0);
      r1 += k(1, a) * ur(a, 1);
      s0 += k(0, a) * us(a, 0);
      s1 += k(1, a) * us(a, 1);
    }
    double rmin = std::numeric_limits<double>::infinity();
    for (double p : p_) rmin = std::min(rmin, p * r0 + (1.0 - p) * r1);
    double lo = 1.0, hi = 0.0;
    for (double p : p_) {
      if (p * r0 + (1.0 - p) * r1 <= rmin + kTieTol) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
      }
    }
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < na; ++b) {
        if (a == b) continue;
        const double alpha = k(1, a) * (ur(b, 1) - ur(a, 1));
        const double beta = k(0, a) * (ur(b, 0) - ur(a, 0)) - alpha;
        const double at_lo = alpha + beta * lo;
        const double at_hi = alpha + beta * hi;
        if (at_lo > kFeasibilityTol && at_hi > kFeasibilityTol) return std::nullopt;
        if (at_lo > kFeasibilityTol) {
          lo = lo + (at_lo - kFeasibilityTol) / (at_lo - at_hi) * (hi - lo);
        } else if (at_hi > kFeasibilityTol) {
          hi = hi - (at_hi - kFeasibilityTol) / (at_hi - at_lo) * (hi - lo);
        }
        if (lo > hi) return std::nullopt;
      }
    }
    double smin = std::numeric_limits<double>::infinity();
    for (double p : p_) smin = std::min(smin, p * s0 + (1.0 - p) * s1);
    return smin;
  }

 private:
  const GameSpec& game_;
  std::vector<double> p_;
};

Evaluator MakeEvaluator(const GameSpec& game) {
  if (game.num_states() == 2) return TwoStateEvaluator(game);
  return [&game](const Matrix& k) -> std::optional<double> {
    const auto sigma = StatisticalExperiment::Canonical(game, k);
    if (!IsStatisticallyObedient(sigma, game)) return std::nullopt;
    return MeuPayoff(sigma, ReceiverStrategy::Obedient(game.num_actions()), game.sender_payoff,
                     game.priors)
        .value;
  };
}

struct Candidate {
  double value;
  Matrix kernel;
};

// Keeps the best few distinct kernels, best first.
class TopCandidates {
 public:
  void Offer(double value, const Matrix& kernel) {
    if (items_.size() == kTopCandidates && value <= items_.back().value) return;
    for (const auto& c : items_) {
      if (c.kernel.MaxAbsDiff(kernel) <= kRepresentationTol) return;
    }
    auto it = std::find_if(items_.begin(), items_.end(),
                           [&](const Candidate& c) { return value > c.value; });
    items_.insert(it, Candidate{value, kernel});
    if (items_.size() > kTopCandidates) items_.pop_back();
  }
  const std::vector<Candidate>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<Candidate> items_;
};

// Compositions of n into `parts` nonnegative integers, scaled to probability rows.
std::vector<std::vector<double>> SimplexRows(std::size_t parts, std::size_t n) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> c(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      c[i] = left;
      std::vector<double> row(parts);
      for (std::size_t j = 0; j < parts; ++j) row[j] = static_cast<double>(c[j]) / static_cast<double>(n);
      out.push_back(std::move(row));
      return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
      c[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

double GridCount(std::size_t parts, std::size_t states, std::size_t n) {
  // C(n + parts - 1, parts - 1) ^ states
  double per_row = 1.0;
  for (std::size_t j = 1; j < parts; ++j) per_row = per_row * static_cast<double>(n + j) / static_cast<double>(j);
  return std::pow(per_row, static_cast<double>(states));
}

// Full grid; returns the subdivision actually used.
std::size_t RunGrid(const GameSpec& game, const SolveOptions& opt, const Evaluator& eval,
                    TopCandidates& top) {
  const std::size_t ns = game.num_states(), na = game.num_actions();
  std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / opt.resolution)));
  const double cap = static_cast<double>(ns == 2 ? opt.max_fast_grid_points : opt.max_lp_grid_points);
  while (n > 1 && GridCount(na, ns, n) > cap) --n;

  const auto rows = SimplexRows(na, n);
  std::vector<std::size_t> idx(ns, 0);
  Matrix k(ns, na);
  while (true) {
    for (std::size_t w = 0; w < ns; ++w) std::copy(rows[idx[w]].begin(), rows[idx[w]].end(), k.row(w).begin());
    if (auto v = eval(k)) top.Offer(*v, k);
    std::size_t w = 0;
    while (w < ns && ++idx[w] == rows.size()) idx[w++] = 0;
    if (w == ns) break;
  }
  return n;
}

// 2x2: dense local grid of +-h around each candidate with step h/10.
void RefineBoxes(const Evaluator& eval, TopCandidates& top, double h) {
  const double step = h / 10.0;
  const auto seeds = top.items();
  Matrix k(2, 2);
  for (const auto& c : seeds) {
    for (int i = -10; i <= 10; ++i) {
      for (int j = -10; j <= 10; ++j) {
        const double x = std::clamp(c.kernel(0, 0) + i * step, 0.0, 1.0);
        const double y = std::clamp(c.kernel(1, 0) + j * step, 0.0, 1.0);
        k(0, 0) = x;
        k(0, 1) = 1.0 - x;
        k(1, 0) = y;
        k(1, 1) = 1.0 - y;
        if (auto v = eval(k)) top.Offer(*v, k);
      }
    }
  }
}

// General games: pattern search shifting mass between two entries of a row.
void RefinePattern(const GameSpec& game, const Evaluator& eval, TopCandidates& top, double h) {
  const double step = h / 10.0;
  Candidate cur = top.items().front();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool improved = false;
    for (std::size_t w = 0; w < game.num_states(); ++w) {
      for (std::size_t a = 0; a < game.num_actions(); ++a) {
        for (std::size_t b = 0; b < game.num_actions(); ++b) {
          if (a == b) continue;
          for (int j = 1; j <= 10; ++j) {
            const double delta = std::min(j * step, cur.kernel(w, a));
            if (delta <= 0.0) break;
            Matrix k = cur.kernel;
            k(w, a) -= delta;
            k(w, b) += delta;
            const auto v = eval(k);
            if (v && *v > cur.value + 1e-15) {
              cur = Candidate{*v, k};
              top.Offer(*v, k);
              improved = true;
            }
          }
        }
      }
    }
    if (!improved) break;
  }
}

// maximize t over (x, y, t[, p]) for one piece of the 2x2 obedient set.
enum class Piece { kLower, kUpper, kFlat };

std::optional<std::array<double, 2>> SolvePiece(const GameSpec& game, Piece piece) {
  const Matrix& r = game.receiver_payoff;
  const Matrix& s = game.sender_payoff;
  const double lo = game.priors.lower(), hi = game.priors.upper();
  const double v1 = r(1, 0) - r(0, 0), v2 = r(1, 1) - r(0, 1);
  const bool flat = piece == Piece::kFlat;
  const std::size_t X = 0, Y = 1, T = 2, P = 3;
  lp::Problem prob(flat ? 4 : 3);
  prob.set_free(T);
  prob.set_objective(T, 1.0);
  auto row = [&] { return std::vector<double>(prob.num_vars(), 0.0); };

  {
    auto bx = row();
    bx[X] = 1.0;
    prob.AddConstraint(bx, lp::Sense::kLessEqual, 1.0);
    auto by = row();
    by[Y] = 1.0;
    prob.AddConstraint(by, lp::Sense::kLessEqual, 1.0);
  }
  // t <= S(p, sigma) at both endpoints.
  for (double p : {lo, hi}) {
    auto c = row();
    c[T] = 1.0;
    c[X] = -p * (s(0, 0) - s(1, 0));
    c[Y] = -(1.0 - p) * (s(0, 1) - s(1, 1));
    prob.AddConstraint(c, lp::Sense::kLessEqual, p * s(1, 0) + (1.0 - p) * s(1, 1));
  }

  if (!flat) {
    const double p = piece == Piece::kLower ? lo : hi;
    // R(p_U) - R(p_L) >= 0 keeps p_L worst; <= 0 keeps p_U worst.
    const double width = hi - lo;
    auto m = row();
    m[X] = width * (r(0, 0) - r(1, 0));
    m[Y] = -width * (r(0, 1) - r(1, 1));
    const double rhs = -width * (r(1, 0) - r(1, 1));
    prob.AddConstraint(m, piece == Piece::kLower ? lp::Sense::kGreaterEqual : lp::Sense::kLessEqual, rhs);
    // slack_ab = p v1 x + (1-p) v2 y <= 0
    auto ab = row();
    ab[X] = p * v1;
    ab[Y] = (1.0 - p) * v2;
    prob.AddConstraint(ab, lp::Sense::kLessEqual, 0.0);
    // slack_ba = -p v1 (1-x) - (1-p) v2 (1-y) <= 0
    prob.AddConstraint(ab, lp::Sense::kLessEqual, p * v1 + (1.0 - p) * v2);
  } else {
    if (hi - lo <= 1e-12) return std::nullopt;
    // Flat receiver line: x v1 - y v2 = C with C = r(1,0) - r(1,1). On it both
    // obedience slacks are linear in (y, p).
    const double C = r(1, 0) - r(1, 1);
    auto eq = row();
    eq[X] = v1;
    eq[Y] = -v2;
    prob.AddConstraint(eq, lp::Sense::kEqual, C);
    auto pl = row();
    pl[P] = 1.0;
    prob.AddConstraint(pl, lp::Sense::kGreaterEqual, lo);
    prob.AddConstraint(pl, lp::Sense::kLessEqual, hi);
    auto ab = row();  // p C + y v2 <= 0
    ab[P] = C;
    ab[Y] = v2;
    prob.AddConstraint(ab, lp::Sense::kLessEqual, 0.0);
    auto ba = row();  // p (C - v1 + v2) + y v2 - v2 <= 0
    ba[P] = C - v1 + v2;
    ba[Y] = v2;
    prob.AddConstraint(ba, lp::Sense::kLessEqual, v2);
  }

  const lp::Solution sol = lp::Maximize(prob);
  if (sol.status == lp::Status::kInfeasible) return std::nullopt;
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kLpFailure,
                std::string("sender LP ended with status ") + lp::StatusName(sol.status));
  }
  return std::array<double, 2>{std::clamp(sol.x[X], 0.0, 1.0), std::clamp(sol.x[Y], 0.0, 1.0)};
}

Matrix BinaryKernel(double x, double y) {
  Matrix k(2, 2);
  k(0, 0) = x;
  k(0, 1) = 1.0 - x;
  k(1, 0) = y;
  k(1, 1) = 1.0 - y;
  return k;
}

}  // namespace

const char* SolveMethodName(SolveMethod method) {
  switch (method) {
    case SolveMethod::kGrid: return "grid";
    case SolveMethod::kRefinedGrid: return "refined-grid";
    case SolveMethod::kEnumerated: return "enumerated";
  }
  return "unknown";
}

std::optional<std::pair<StatisticalExperiment, double>> ExactBinaryStatisticalOptimum(
    const GameSpec& game) {
  if (!game.is_binary()) throw Error(ErrorCode::kPrecondition, "exact solve needs a 2x2 game");
  const TwoStateEvaluator eval(game);
  std::optional<std::pair<StatisticalExperiment, double>> best;
  for (Piece piece : {Piece::kLower, Piece::kUpper, Piece::kFlat}) {
    const auto xy = SolvePiece(game, piece);
    if (!xy) continue;
    const Matrix k = BinaryKernel((*xy)[0], (*xy)[1]);
    const auto v = eval(k);
    if (!v) continue;
    if (!best || *v > best->second) best.emplace(StatisticalExperiment::Canonical(game, k), *v);
  }
  return best;
}

SenderSolution OptimalStatisticalValue(const GameSpec& game, const SolveOptions& opt) {
  if (!(opt.resolution > 0.0 && opt.resolution <= 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must lie in (0, 0.5]", "resolution");
  }
  const Evaluator eval = MakeEvaluator(game);
  TopCandidates top;
  const std::size_t n = RunGrid(game, opt, eval, top);
  if (top.empty()) throw Error(ErrorCode::kInternal, "no obedient kernel on the grid");
  const double grid_only = top.items().front().value;

  double h = 1.0 / static_cast<double>(n);
  for (int round = 0; round < opt.refinement_rounds; ++round) {
    if (game.is_binary()) {
      RefineBoxes(eval, top, h);
    } else {
      RefinePattern(game, eval, top, h);
    }
    h /= 10.0;
  }
  Candidate best = top.items().front();
  SolveMethod method = best.value > grid_only ? SolveMethod::kRefinedGrid : SolveMethod::kGrid;
  const double grid_value = best.value;
  bool approximate = true;

  if (game.is_binary()) {
    // The exact optimum wins unless the grid beats it by more than the value
    // tolerance; grid points are admitted at the 1e-8 obedience tolerance and
    // may overshoot a boundary optimum by that much.
    if (auto exact = ExactBinaryStatisticalOptimum(game); exact && exact->second >= grid_value - kValueTol) {
      best = Candidate{exact->second, exact->first.kernel()};
      method = SolveMethod::kEnumerated;
      approximate = false;
    }
  }

  auto sigma = StatisticalExperiment::Canonical(game, best.kernel);
  auto witness = StatisticalObedience(sigma, game);
  if (!witness) throw Error(ErrorCode::kInternal, "selected experiment failed re-certification");
  const double value = MeuPayoff(sigma, ReceiverStrategy::Obedient(game.num_actions()),
                                 game.sender_payoff, game.priors)
                           .value;
  return SenderSolution{value, AmbiguousExperiment::Create({std::move(sigma)}), std::move(*witness),
                        method, approximate, grid_value};
}

std::optional<double> AmbiguousSenderValue(const AmbiguousExperiment& sigma, const GameSpec& game) {
  if (!AmbiguousObedience(sigma, game)) return std::nullopt;
  return AmbiguousMeuPayoff(sigma, ReceiverStrategy::Obedient(game.num_actions()), game.sender_payoff,
                            game.priors)
      .value;
}

StatisticalExperiment SampleCanonicalExperiment(const GameSpec& game, Rng& rng,
                                                const SamplerConfig& sampler) {
  Matrix k(game.num_states(), game.num_actions());
  for (std::size_t w = 0; w < k.rows(); ++w) {
    double total = 0.0;
    for (std::size_t a = 0; a < k.cols(); ++a) {
      k(w, a) = sampler.kind == SamplerKind::kDirichlet ? rng.Gamma(sampler.concentration) : rng.Uniform();
      total += k(w, a);
    }
    if (total <= 0.0) {
      k(w, 0) = total = 1.0;
    }
    for (std::size_t a = 0; a < k.cols(); ++a) k(w, a) /= total;
  }
  return StatisticalExperiment::Canonical(game, std::move(k));
}

std::optional<AmbiguousExperiment> SampleObedientAmbiguous(const GameSpec& game, std::uint64_t seed,
                                                           std::size_t n_generators,
                                                           std::size_t max_retries,
                                                           const SamplerConfig& sampler) {
  if (n_generators == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one generator");
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<StatisticalExperiment> gens;
    gens.reserve(n_generators);
    for (std::size_t j = 0; j < n_generators; ++j) gens.push_back(SampleCanonicalExperiment(game, rng, sampler));
    auto sigma = AmbiguousExperiment::Create(std::move(gens));
    if (AmbiguousObedience(sigma, game)) return sigma;
  }
  return std::nullopt;
}

bool HasObedientMember(const AmbiguousExperiment& sigma, const GameSpec& game,
                       std::size_t mixture_grid) {
  for (const auto& g : sigma.generators()) {
    if (IsStatisticallyObedient(g, game)) return true;
  }
  if (const auto witness = AmbiguousObedience(sigma, game)) {
    // Witness mass at one prior vertex aggregates to a single member; with a
    // single prior this member is obedient outright.
    for (std::size_t i = 0; i < game.priors.size(); ++i) {
      std::vector<double> weights(sigma.size(), 0.0);
      double total = 0.0;
      for (const auto& fw : witness->face_weights) {
        if (fw.prior_vertex == i) {
          weights[fw.generator] += fw.weight;
          total += fw.weight;
        }
      }
      if (total > 0.0 && IsStatisticallyObedient(Mix(sigma, weights), game)) return true;
    }
  }
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (std::size_t j = i + 1; j < sigma.size(); ++j) {
      for (std::size_t step = 1; step < mixture_grid; ++step) {
        std::vector<double> weights(sigma.size(), 0.0);
        weights[i] = static_cast<double>(step) / static_cast<double>(mixture_grid);
        weights[j] = 1.0 - weights[i];
        if (IsStatisticallyObedient(Mix(sigma, weights), game)) return true;
      }
    }
  }
  if (game.is_binary() && !Normalize(game).degenerate) {
    try {
      const auto w = ConstructSigmaHat(sigma, game);
      if (IsStatisticallyObedient(w.sigma_hat.ToCanonical(game), game)) return true;
    } catch (const Error&) {
      // Reported as a candidate; the theorem campaign surfaces the diagnostics.
    }
  }
  return false;
}

GainReport GainSearch(const GameSpec& game, std::size_t budget, std::uint64_t seed,
                      const GainSearchOptions& opt) {
  if (opt.min_generators == 0 || opt.min_generators > opt.max_generators) {
    throw Error(ErrorCode::kInvalidArgument, "bad generator count range");
  }
  GainReport report;
  const SenderSolution stat = OptimalStatisticalValue(game, opt.solve);
  report.v_stat = stat.value;
  report.v_stat_method = stat.method;
  report.v_stat_approximate = stat.approximate;
  report.trials = budget;
  report.rows.resize(budget);

  ParallelFor(budget, opt.threads, [&](std::size_t t) {
    TrialRecord& row = report.rows[t];
    row.trial = t;
    row.seed = TrialSeed(seed, t);
    Rng rng(row.seed);
    row.n_generators = opt.min_generators + rng.Index(opt.max_generators - opt.min_generators + 1);
    const auto sigma = SampleObedientAmbiguous(game, SplitMix64(row.seed), row.n_generators,
                                               opt.max_retries, opt.sampler);
    if (!sigma) return;
    row.obedient = true;
    row.sender_value = AmbiguousSenderValue(*sigma, game);
    row.lemma2_candidate = !HasObedientMember(*sigma, game, opt.mixture_grid);
  });

  for (const auto& row : report.rows) {
    if (!row.obedient) continue;
    ++report.obedient_trials;
    if (row.lemma2_candidate) ++report.lemma2_candidates;
    if (row.sender_value && (!report.best_ambiguous || *row.sender_value > *report.best_ambiguous)) {
      report.best_ambiguous = row.sender_value;
    }
  }
  if (report.best_ambiguous) report.gap = *report.best_ambiguous - report.v_stat;
  report.bound_asserted = game.is_binary();
  report.bound_holds = !report.gap || *report.gap <= kValueTol;
  return report;
}

}  // namespace persuasion
