// Copyright 2026 The dphc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPHC_RNG_HPP_
#define DPHC_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>

namespace dphc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for a parallel trial: hash(master, path...).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (auto p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

/// Deterministic random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; every derived draw (uniforms, integers,
/// shuffles) is computed here rather than through <random> distributions, so
/// streams are identical across standard library implementations.
///
/// A stream can be put in noise-disabled mode, in which privacy noise draws
/// (Laplace, Gumbel) return zero. Other draws are unaffected. This mode is for
/// contract tests only and carries no privacy guarantee.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static SeededRng noise_disabled(std::uint64_t seed = 0) {
    SeededRng rng(seed);
    rng.noise_enabled_ = false;
    return rng;
  }

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] bool noise_enabled() const noexcept { return noise_enabled_; }
  void set_noise_enabled(bool enabled) noexcept { noise_enabled_ = enabled; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53); }

  /// Uniform integer on [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform_open() < p;
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  SeededRng child(std::uint64_t index) const {
    SeededRng rng(derive_seed(seed_, {index}));
    rng.noise_enabled_ = noise_enabled_;
    return rng;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool noise_enabled_ = true;
};

}  // namespace dphc

#endif  // DPHC_RNG_HPP_
