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

// Oracle-backed checks shared by the acceptance suite and `p2g selftest`.
// Each check compares an implementation route against brute_force.h at a
// pinned tolerance and reports the worst deviation it saw.

#ifndef P2G_ORACLE_CHECKS_H_
#define P2G_ORACLE_CHECKS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "p2g/ctc.h"
#include "p2g/scorer.h"

namespace p2g::oracle {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// One "[PASS] name: detail (1.23 s)" line.
std::string FormatCheck(const CheckResult& result);

// Implementation entry points a check calls. Tests swap in deliberately
// broken versions to confirm the checks notice.
struct Hooks {
  std::function<double(const PosteriorGrid&, const PhonemeSequence&)> forward =
      ForwardLogProb;
};

// Scorer over `alphabet` with languages {"aa", "bb"} and characters `chars`,
// trained on a handful of random pairs. Larger alpha flattens it.
NGramScorer RandomTinyScorer(const Alphabet& alphabet,
                             const std::vector<std::string>& chars, Rng& rng,
                             double alpha, int order = 2);

struct ForwardCheckOptions {
  std::size_t grids = 100;
  std::size_t max_frames = 6;
  std::size_t max_symbols = 3;
  double tolerance = 1e-10;
  double time_limit_sec = 10.0;
  std::uint64_t seed = 1;
};
CheckResult CheckForwardOracle(const ForwardCheckOptions& options,
                               const Hooks& hooks = {});

struct PartitionCheckOptions {
  std::size_t grids = 100;
  std::size_t max_frames = 6;
  std::size_t max_symbols = 3;
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
};
CheckResult CheckPartition(const PartitionCheckOptions& options,
                           const Hooks& hooks = {});

struct SskmCheckOptions {
  std::size_t runs = 1000;
  std::size_t k = 16;
  double sigmas = 3.0;
  double time_limit_sec = 30.0;
  std::uint64_t seed = 7;
};
CheckResult CheckSskmUnbiased(const SskmCheckOptions& options);

struct TkmCheckOptions {
  std::size_t instances = 50;
  std::size_t max_frames = 5;
  std::size_t max_symbols = 2;
  double tolerance = 1e-9;
  std::uint64_t seed = 11;
};
CheckResult CheckTkmExact(const TkmCheckOptions& options,
                          const Hooks& hooks = {});

struct SkmCheckOptions {
  std::size_t instances = 10;
  std::size_t max_frames = 4;
  std::size_t max_symbols = 2;
  std::size_t skm_k = 50000;
  std::size_t sskm_k = 100000;
  double skm_tolerance = 1e-9;
  double sskm_relative = 0.01;
  std::uint64_t seed = 13;
};
CheckResult CheckSkmAgreement(const SkmCheckOptions& options);

struct BeamCheckOptions {
  std::size_t grids = 50;
  std::size_t max_frames = 5;
  std::size_t max_symbols = 2;
  double tolerance = 1e-12;
  std::uint64_t seed = 17;
};
CheckResult CheckBeamOracle(const BeamCheckOptions& options);

struct DecodeCheckOptions {
  std::size_t instances = 50;
  std::size_t max_frames = 4;
  std::size_t max_len = 3;
  double tolerance = 1e-10;  // pooled values vs exhaustive cascade
  std::uint64_t seed = 19;
};
CheckResult CheckDecodeOracle(const DecodeCheckOptions& options);

CheckResult CheckMetricFixtures();

struct OversampleCheckOptions {
  double target_hours = 240.0;
  double min_dur = 20.0;
  double max_dur = 60.0;
  double ky_factor_relative = 0.05;
  std::uint64_t seed = 23;
};
CheckResult CheckOversampling(const OversampleCheckOptions& options);

struct RoundTripCheckOptions {
  std::size_t pairs = 10000;
  std::uint64_t seed = 29;
};
CheckResult CheckSerializationRoundTrip(const RoundTripCheckOptions& options);

}  // namespace p2g::oracle

#endif  // P2G_ORACLE_CHECKS_H_
