/*
 * Copyright 2026 The Graphleak Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "graphleak/rng.h"

#include <cmath>
#include <numbers>

#include "graphleak/error.h"

namespace graphleak {

uint64_t MixSeed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SeededRng::SeededRng(uint64_t seed) : seed_(seed), engine_(seed) {}

uint64_t SeededRng::NextU64() { return engine_(); }

double SeededRng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double SeededRng::Uniform(double lo, double hi) {
  return lo + (hi - lo) * Uniform();
}

uint64_t SeededRng::UniformIndex(uint64_t n) {
  if (n == 0) throw InvalidArgument("UniformIndex: empty range");
  // Rejection sampling on the top of the range removes modulo bias.
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  uint64_t x = NextU64();
  while (x >= limit) x = NextU64();
  return x % n;
}

double SeededRng::Normal() {
  // Box-Muller; one variate per call keeps the stream position simple.
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

bool SeededRng::Bernoulli(double p) { return Uniform() < p; }

SeededRng SeededRng::Fork(uint64_t stream) const {
  return SeededRng(MixSeed(seed_, stream));
}

}  // namespace graphleak
