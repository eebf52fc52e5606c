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

#ifndef P2G_DECODER_H_
#define P2G_DECODER_H_

#include <span>
#include <vector>

#include "p2g/ctc.h"
#include "p2g/scorer.h"

namespace p2g {

// Pooled candidates whose rescored values lie within this distance (in log
// space) of the best are treated as tied; the tie goes to the smallest
// (lid, text).
inline constexpr double kTieTolerance = 1e-12;

struct DecodeOptions {
  std::size_t k = 8;           // phoneme hypotheses
  std::size_t s = 4;           // text candidates per hypothesis
  std::size_t beam_width = 16; // phoneme beam; raised to k when smaller
  std::size_t max_len = 64;    // code points per generated text
  bool normalize_weights = false;
};

struct DecodeResult {
  TargetText best;
  std::vector<ScoredText> pool;  // deduplicated, ScoredTextBefore order
  std::size_t k_used = 0;
  std::size_t s_used = 0;
};

// Union of per-hypothesis candidates, each scored as
//   log sum_k exp(w_k + log p(y | h_k))
// where hypotheses that did not generate y contribute nothing. Throws
// InvalidArgument when the two lists differ in length.
std::vector<ScoredText> PoolAndRescore(
    std::span<const ScoredHypothesis> hyps,
    std::span<const std::vector<ScoredText>> per_hyp_candidates);

// Best entry of a pool sorted by ScoredTextBefore, applying kTieTolerance.
const ScoredText& SelectBest(std::span<const ScoredText> pool);

// Phoneme beam search -> top-s generation per hypothesis -> pooled rescoring.
DecodeResult Decode(const PosteriorGrid& grid, const ConditionalScorer& scorer,
                    const DecodeOptions& options);

}  // namespace p2g

#endif  // P2G_DECODER_H_
