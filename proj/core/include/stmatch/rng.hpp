// Copyright 2026 The stmatch Authors
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

#ifndef STMATCH_RNG_HPP_
#define STMATCH_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace stmatch {

// splitmix64 step. Used to derive independent child seeds from a base seed
// so that iteration k of a randomized procedure is reproducible on its own.
inline std::uint64_t split_seed(std::uint64_t s) {
  std::uint64_t z = s + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Uniform integer in [0, n). Rejection sampling on the raw 64-bit stream;
// std::uniform_int_distribution is not portable across standard libraries.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// Uniform integer in [lo, hi] inclusive.
inline int rand_in(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Uniform double in [0, 1) from a 53-bit draw.
inline double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Bernoulli(p).
inline bool rand_bool(Rng& rng, double p) { return rand_unit(rng) < p; }

// Fisher-Yates shuffle; deterministic given the generator state.
template <class T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rand_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// k distinct values from {1, ..., n}, in random order (partial Fisher-Yates).
inline std::vector<int> sample_distinct(Rng& rng, int n, int k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    static_cast<std::size_t>(rand_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    out.push_back(pool[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace stmatch

#endif  // STMATCH_RNG_HPP_
