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

#include "p2g/decoder.h"

#include <algorithm>
#include <map>

#include "p2g/common.h"

namespace p2g {

std::vector<ScoredText> PoolAndRescore(
    std::span<const ScoredHypothesis> hyps,
    std::span<const std::vector<ScoredText>> per_hyp_candidates) {
  if (hyps.size() != per_hyp_candidates.size()) {
    throw InvalidArgument("got " + std::to_string(per_hyp_candidates.size()) +
                          " candidate lists for " +
                          std::to_string(hyps.size()) + " hypotheses");
  }
  std::map<TargetText, LogSumExp> pooled;
  for (std::size_t k = 0; k < hyps.size(); ++k) {
    // A text repeated within one hypothesis' list counts once.
    std::map<TargetText, double> own;
    for (const auto& cand : per_hyp_candidates[k]) {
      own.emplace(cand.text, cand.log_prob);
    }
    for (const auto& [text, log_prob] : own) {
      pooled[text].Add(hyps[k].log_score + log_prob);
    }
  }
  std::vector<ScoredText> out;
  out.reserve(pooled.size());
  for (const auto& [text, acc] : pooled) out.push_back({text, acc.Value()});
  std::sort(out.begin(), out.end(), ScoredTextBefore);
  return out;
}

const ScoredText& SelectBest(std::span<const ScoredText> pool) {
  if (pool.empty()) throw InvalidArgument("empty candidate pool");
  double top = kLogZero;
  for (const auto& cand : pool) top = std::max(top, cand.log_prob);
  const ScoredText* best = nullptr;
  for (const auto& cand : pool) {
    if (top - cand.log_prob > kTieTolerance) continue;
    if (best == nullptr || cand.text < best->text) best = &cand;
  }
  return *best;
}

DecodeResult Decode(const PosteriorGrid& grid, const ConditionalScorer& scorer,
                    const DecodeOptions& options) {
  if (options.k == 0) throw InvalidArgument("k must be >= 1");
  if (options.s == 0) throw InvalidArgument("s must be >= 1");

  auto hyps = PrefixBeamSearch(grid, std::max(options.beam_width, options.k),
                               options.k);
  if (options.normalize_weights) {
    LogSumExp norm;
    for (const auto& hyp : hyps) norm.Add(hyp.log_score);
    const double shift = norm.Value();
    for (auto& hyp : hyps) hyp.log_score -= shift;
  }

  std::vector<std::vector<ScoredText>> candidates;
  candidates.reserve(hyps.size());
  for (const auto& hyp : hyps) {
    candidates.push_back(
        scorer.GenerateTopS(hyp.sequence, options.s, options.max_len));
  }

  DecodeResult result;
  result.pool = PoolAndRescore(hyps, candidates);
  result.best = SelectBest(result.pool).text;
  result.k_used = hyps.size();
  result.s_used = options.s;
  return result;
}

}  // namespace p2g
