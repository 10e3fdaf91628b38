// Copyright 2026 The nasforge Authors.
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

#ifndef NASFORGE_COMMON_RNG_H_
#define NASFORGE_COMMON_RNG_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace nasforge {

// SplitMix64 finalizer; used to derive independent seeds.
uint64_t Mix64(uint64_t x);

// FNV-1a over `bytes`, then mixed with `seed`.
uint64_t HashString(std::string_view bytes, uint64_t seed = 0);

// Seeded random stream. Distributions are constructed per call so the
// engine state is the complete state of the stream.
class Rng {
 public:
  explicit Rng(uint64_t seed = 20) : engine_(seed) {}

  // Uniform integer in [0, n). Requires n >= 1.
  int UniformInt(int n);
  // Uniform real in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi);
  double Normal(double mean = 0.0, double stddev = 1.0);
  bool Bernoulli(double p);

  template <typename T>
  void Shuffle(std::vector<T>& values) {
    std::shuffle(values.begin(), values.end(), engine_);
  }

  std::mt19937_64& engine() { return engine_; }

  // Text form of the engine state; restored bit-exactly by SetState.
  std::string State() const;
  void SetState(const std::string& state);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nasforge

#endif  // NASFORGE_COMMON_RNG_H_
