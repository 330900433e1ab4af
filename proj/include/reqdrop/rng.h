// Copyright 2026 The Reqdrop Authors.
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

#ifndef REQDROP_RNG_H_
#define REQDROP_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace reqdrop {

// Deterministic random source. std::mt19937_64's output sequence is fixed by
// the standard, but the std distributions are not, so every draw used for an
// artifact goes through the explicit transforms below.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  uint64_t UniformIndex(uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform01();

  // Standard normal via Box-Muller (one value per call, no caching).
  double Gaussian();

  // Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (size_t i = values.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformIndex(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to combine seeds.
uint64_t MixSeed(uint64_t seed, uint64_t salt);

// Derives a per-entity seed from a run seed and a stable string id.
uint64_t DeriveSeed(uint64_t seed, std::string_view id);

}  // namespace reqdrop

#endif  // REQDROP_RNG_H_
