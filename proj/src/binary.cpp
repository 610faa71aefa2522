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

#include "persuasion/binary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace persuasion {
namespace {

constexpr double kEndpointTol = 1e-12;

void RequireBinary(const GameSpec& game) {
  if (!game.is_binary()) {
    throw Error(ErrorCode::kPrecondition, "operation needs exactly two states and two actions");
  }
}

// Relabeled coordinates: the formulas assume the first action is the one
// whose deviation vector is (+, -).
BinaryExperiment Oriented(const BinaryExperiment& s, const BinaryNormalization& norm) {
  return norm.actions_swapped ? BinaryExperiment{1.0 - s.x, 1.0 - s.y} : s;
}

double Cross(std::array<double, 2> o, std::array<double, 2> a, std::array<double, 2> b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double SegmentDistance(std::array<double, 2> a, std::array<double, 2> b, std::array<double, 2> q) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(q[0] - (a[0] + t * dx), q[1] - (a[1] + t * dy));
}

std::string Describe(const DecompositionWitness& w) {
  std::ostringstream os;
  os.precision(17);
  os << "k=" << w.k << " p_L=" << w.p_lower << " p_U=" << w.p_upper << " sigma_L=(" << w.sigma_lower.x
     << "," << w.sigma_lower.y << ") sigma_U=(" << w.sigma_upper.x << "," << w.sigma_upper.y
     << ") alpha=" << w.alpha << " lambda=" << w.lambda << " M_L=" << w.slope_lower
     << " M_U=" << w.slope_upper << " M_hat=" << w.slope_hat << " sigma_hat=(" << w.sigma_hat.x
     << "," << w.sigma_hat.y << ") p_alpha=" << w.p_alpha << " phi_hat=" << w.phi_hat;
  return os.str();
}

}  // namespace

BinaryNormalization Normalize(const GameSpec& game) {
  RequireBinary(game);
  BinaryNormalization n;
  const Matrix& u = game.receiver_payoff;
  n.v = {u(1, 0) - u(0, 0), u(1, 1) - u(0, 1)};
  if ((n.v[0] >= 0.0 && n.v[1] >= 0.0) || (n.v[0] <= 0.0 && n.v[1] <= 0.0)) {
    n.degenerate = true;
    return n;
  }
  n.actions_swapped = n.v[0] < 0.0;
  const double v1 = n.actions_swapped ? -n.v[0] : n.v[0];
  const double v2 = n.actions_swapped ? -n.v[1] : n.v[1];
  n.scale = 1.0 / v1;
  n.k = -v2 / v1;
  const std::size_t first = n.actions_swapped ? 1 : 0;
  n.w = {n.scale * u(first, 0), n.scale * u(first, 1)};
  return n;
}

BinaryExperiment BinaryExperiment::FromCanonical(const StatisticalExperiment& sigma) {
  if (sigma.num_states() != 2 || sigma.num_messages() != 2) {
    throw Error(ErrorCode::kPrecondition, "binary experiment needs a 2x2 kernel");
  }
  return {sigma(0, 0), sigma(1, 0)};
}

StatisticalExperiment BinaryExperiment::ToCanonical(const GameSpec& game) const {
  RequireBinary(game);
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "binary experiment outside the unit box");
  }
  Matrix k(2, 2);
  k(0, 0) = x;
  k(0, 1) = 1.0 - x;
  k(1, 0) = y;
  k(1, 1) = 1.0 - y;
  return StatisticalExperiment::Canonical(game, std::move(k));
}

BinaryExperiment Lerp(const BinaryExperiment& a, const BinaryExperiment& b, double t_on_a) {
  return {t_on_a * a.x + (1.0 - t_on_a) * b.x, t_on_a * a.y + (1.0 - t_on_a) * b.y};
}

BinaryLine ReceiverLine(const BinaryExperiment& sigma, const BinaryNormalization& norm) {
  if (norm.degenerate) throw Error(ErrorCode::kPrecondition, "degenerate normalization");
  const BinaryExperiment s = Oriented(sigma, norm);
  return {norm.w[0] - norm.w[1] + (1.0 - s.x) + norm.k * (1.0 - s.y),
          norm.w[1] - norm.k * (1.0 - s.y)};
}

PhiValues Phi(double p, const BinaryExperiment& sigma, const BinaryNormalization& norm) {
  if (norm.degenerate) throw Error(ErrorCode::kPrecondition, "degenerate normalization");
  const BinaryExperiment s = Oriented(sigma, norm);
  PhiValues out;
  out.ab = p * s.x - norm.k * (1.0 - p) * s.y;
  out.ba = out.ab + norm.k - (1.0 + norm.k) * p;
  return out;
}

bool BinaryObedience(double p, const BinaryExperiment& sigma, const BinaryNormalization& norm,
                     double tol) {
  const PhiValues phi = Phi(p, sigma, norm);
  return phi.ab <= std::min(0.0, (1.0 + norm.k) * p - norm.k) + tol;
}

FaceSplit SplitFaces(const AmbiguousExperiment& sigma, const GameSpec& game) {
  RequireBinary(game);
  const KStarFace face = KStar(sigma, game);
  const double lo = game.priors.lower();
  const double hi = game.priors.upper();
  FaceSplit out;
  for (const auto& [i, j] : face.minimizing_pairs) {
    const double p = game.priors.vertex(i)[0];
    if (p <= lo + kEndpointTol) out.lower.push_back(j);
    if (p >= hi - kEndpointTol) out.upper.push_back(j);
  }
  auto dedup = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(out.lower);
  dedup(out.upper);
  return out;
}

ObedientDecomposition DecomposeObedientPi(const ObedienceWitness& witness,
                                          const AmbiguousExperiment& sigma, const GameSpec& game) {
  RequireBinary(game);
  if (witness.kind != WitnessKind::kAmbiguous || witness.face_weights.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "decomposition needs an ambiguous witness with face weights");
  }
  const double lo = game.priors.lower();
  const double hi = game.priors.upper();
  const bool collapsed = hi - lo <= kEndpointTol;

  double mass_lower = 0.0, mass_upper = 0.0, total = 0.0;
  BinaryExperiment sum_lower, sum_upper;
  for (const auto& fw : witness.face_weights) {
    if (fw.prior_vertex >= game.priors.size() || fw.generator >= sigma.size() || fw.weight < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "witness weight refers outside the face");
    }
    total += fw.weight;
    const BinaryExperiment g = BinaryExperiment::FromCanonical(sigma.generator(fw.generator));
    const double p = game.priors.vertex(fw.prior_vertex)[0];
    // p x sigma is linear in p, so an interior vertex splits onto the endpoints.
    const double to_lower = collapsed ? 1.0 : std::clamp((hi - p) / (hi - lo), 0.0, 1.0);
    const double wl = fw.weight * to_lower, wu = fw.weight * (1.0 - to_lower);
    mass_lower += wl;
    mass_upper += wu;
    sum_lower.x += wl * g.x;
    sum_lower.y += wl * g.y;
    sum_upper.x += wu * g.x;
    sum_upper.y += wu * g.y;
  }
  if (std::abs(total - 1.0) > kJointTol) {
    throw Error(ErrorCode::kInvalidArgument, "witness weights do not sum to one");
  }
  ObedientDecomposition out;
  out.alpha = std::clamp(mass_lower / total, 0.0, 1.0);
  if (mass_lower > 0.0) out.sigma_lower = {sum_lower.x / mass_lower, sum_lower.y / mass_lower};
  if (mass_upper > 0.0) out.sigma_upper = {sum_upper.x / mass_upper, sum_upper.y / mass_upper};
  if (mass_lower <= 0.0) out.sigma_lower = out.sigma_upper;
  if (mass_upper <= 0.0) out.sigma_upper = out.sigma_lower;
  return out;
}

DecompositionWitness ConstructSigmaHat(const AmbiguousExperiment& sigma, const GameSpec& game) {
  RequireBinary(game);
  const BinaryNormalization norm = Normalize(game);
  if (norm.degenerate) {
    throw Error(ErrorCode::kPrecondition,
                "one action weakly dominates; obedience then needs only the dominant recommendation");
  }
  const auto witness = AmbiguousObedience(sigma, game);
  if (!witness) throw Error(ErrorCode::kPrecondition, "ambiguous experiment is not obedient");
  const ObedientDecomposition dec = DecomposeObedientPi(*witness, sigma, game);

  DecompositionWitness out;
  out.sigma_lower = dec.sigma_lower;
  out.sigma_upper = dec.sigma_upper;
  out.alpha = dec.alpha;
  out.k = norm.k;
  out.p_lower = game.priors.lower();
  out.p_upper = game.priors.upper();
  out.p_alpha = out.alpha * out.p_lower + (1.0 - out.alpha) * out.p_upper;
  out.slope_lower = ReceiverLine(out.sigma_lower, norm).slope;
  out.slope_upper = ReceiverLine(out.sigma_upper, norm).slope;

  const double width = out.p_upper - out.p_lower;
  // Payoff differences below the tie tolerance (in original units) count as zero slope.
  const double slope_tol = width > 0.0 ? norm.scale * kFeasibilityTol / width : 0.0;
  // With all weight on one endpoint the aggregate there is already the answer.
  const bool has_lower = out.alpha > 0.0, has_upper = out.alpha < 1.0;
  if (width <= kEndpointTol) {
    out.lambda = 1.0;
  } else {
    if ((has_lower && out.slope_lower < -slope_tol) || (has_upper && out.slope_upper > slope_tol)) {
      out.sigma_hat = out.sigma_lower;
      throw Error(ErrorCode::kTheoremViolation,
                  "expected M(sigma_L) >= 0 >= M(sigma_U): " + Describe(out));
    }
    if (!has_upper) {
      out.lambda = 1.0;
    } else if (!has_lower) {
      out.lambda = 0.0;
    } else {
      const double ml = std::max(out.slope_lower, 0.0);
      const double mu = std::min(out.slope_upper, 0.0);
      out.lambda = ml - mu > 0.0 ? -mu / (ml - mu) : 1.0;
    }
  }
  out.sigma_hat = Lerp(out.sigma_lower, out.sigma_upper, out.lambda);
  out.sigma_hat.x = std::clamp(out.sigma_hat.x, 0.0, 1.0);
  out.sigma_hat.y = std::clamp(out.sigma_hat.y, 0.0, 1.0);
  out.slope_hat = ReceiverLine(out.sigma_hat, norm).slope;
  out.phi_hat = Phi(out.p_alpha, out.sigma_hat, norm).ab;

  if (!BinaryObedience(out.p_alpha, out.sigma_hat, norm, kFeasibilityTol * norm.scale)) {
    throw Error(ErrorCode::kTheoremViolation,
                "sigma_hat is not obedient at p_alpha: " + Describe(out));
  }
  if (!StatisticalObedience(out.sigma_hat.ToCanonical(game), game)) {
    throw Error(ErrorCode::kTheoremViolation,
                "sigma_hat fails the worst-case-prior obedience test: " + Describe(out));
  }
  return out;
}

bool InConvexHull2D(const std::vector<std::array<double, 2>>& points, std::array<double, 2> q,
                    double tol) {
  if (points.empty()) return false;
  std::vector<std::array<double, 2>> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return std::hypot(q[0] - pts[0][0], q[1] - pts[0][1]) <= tol;

  // Andrew's monotone chain, counter-clockwise, collinear points dropped.
  std::vector<std::array<double, 2>> hull(2 * pts.size());
  std::size_t h = 0;
  for (const auto& p : pts) {
    while (h >= 2 && Cross(hull[h - 2], hull[h - 1], p) <= 0.0) --h;
    hull[h++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
    while (h >= lower && Cross(hull[h - 2], hull[h - 1], pts[i]) <= 0.0) --h;
    hull[h++] = pts[i];
  }
  hull.resize(h - 1);

  if (hull.size() <= 2) {
    double best = std::hypot(q[0] - hull[0][0], q[1] - hull[0][1]);
    if (hull.size() == 2) best = std::min(best, SegmentDistance(hull[0], hull[1], q));
    return best <= tol;
  }
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    if (Cross(a, b, q) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return true;
  double best = SegmentDistance(hull.back(), hull.front(), q);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) best = std::min(best, SegmentDistance(hull[i], hull[i + 1], q));
  return best <= tol;
}

}  // namespace persuasion
