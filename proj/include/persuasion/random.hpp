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

#ifndef PERSUASION_RANDOM_HPP_
#define PERSUASION_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace persuasion {

std::uint64_t SplitMix64(std::uint64_t x);

// Per-trial seed: SplitMix64(seed ^ SplitMix64(trial)). Trials can therefore
// be run in any order, or resumed from any index.
std::uint64_t TrialSeed(std::uint64_t seed, std::uint64_t trial);

// mt19937_64 with bit-exact uniform doubles, so draws do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform on {0, ..., n-1}; n must be positive.
  std::size_t Index(std::size_t n) { return static_cast<std::size_t>(Uniform() * static_cast<double>(n)); }
  // Gamma(shape, 1) by Marsaglia and Tsang, built on Uniform().
  double Gamma(double shape);
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace persuasion

#endif  // PERSUASION_RANDOM_HPP_
