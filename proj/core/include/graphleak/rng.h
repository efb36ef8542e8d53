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

#ifndef GRAPHLEAK_RNG_H_
#define GRAPHLEAK_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace graphleak {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; all distributions are implemented here
// rather than taken from <random> so draws are identical across standard
// library implementations.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed);

  uint64_t seed() const { return seed_; }

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform();
  double Uniform(double lo, double hi);
  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformIndex(uint64_t n);
  double Normal();
  bool Bernoulli(double p);

  template <typename T>
  void Shuffle(std::span<T> values) {
    for (size_t i = values.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformIndex(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // Independent generator for a named sub-stream; the parent is not advanced.
  SeededRng Fork(uint64_t stream) const;

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

// Stateless 64-bit mixing function (splitmix64 finalizer).
uint64_t MixSeed(uint64_t a, uint64_t b);

}  // namespace graphleak

#endif  // GRAPHLEAK_RNG_H_
