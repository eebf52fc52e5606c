/* Copyright 2026 The p2g Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef P2G_RNG_H_
#define P2G_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace p2g {

// Seeded random stream. Uses mt19937_64 for bits but converts to doubles and
// bounded integers itself, so sequences are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for one named unit of work (an utterance, a language).
  // Derived from (seed, key, epoch) only, so results never depend on the
  // order in which units are processed.
  static Rng ForStream(std::uint64_t seed, std::string_view key,
                       std::uint64_t epoch = 0);

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// FNV-1a, 64 bit. Stable across platforms, unlike std::hash.
std::uint64_t Fnv1a64(std::string_view bytes);

// splitmix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

}  // namespace p2g

#endif  // P2G_RNG_H_
