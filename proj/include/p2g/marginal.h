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

// Estimators of the cascade marginal log p(y|x) = log sum_h p(h|x) p(y|h).
//
//   TKM   sum over a fixed hypothesis list, weighted by its beam scores.
//   SKM   sample k paths, collapse and deduplicate, weight each distinct
//         sequence by its exact CTC forward probability.
//   SSKM  plain Monte Carlo mean of p(y | B(pi)) over k raw path samples.
//         Unbiased for the path marginal; needs no forward pass.

#ifndef P2G_MARGINAL_H_
#define P2G_MARGINAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "p2g/ctc.h"
#include "p2g/scorer.h"

namespace p2g {

enum class Method { kTkm, kSkm, kSskm };

std::string_view MethodName(Method method);
// Accepts "tkm", "skm", "sskm". Throws InvalidArgument otherwise.
Method ParseMethod(std::string_view name);

struct MarginalEstimate {
  double log_marginal = 0.0;
  Method method = Method::kTkm;
  // Terms in the estimate: hypotheses (TKM), distinct sequences (SKM) or
  // draws (S-SKM).
  std::size_t k_used = 0;
};

// With normalize_weights, hypothesis weights are shifted so that they sum to
// one over the list before mixing.
MarginalEstimate TkmLogMarginal(std::span<const ScoredHypothesis> hyps,
                                const TargetText& y,
                                const ConditionalScorer& scorer,
                                bool normalize_weights = false);

MarginalEstimate SkmLogMarginal(const PosteriorGrid& grid, const TargetText& y,
                                const ConditionalScorer& scorer, std::size_t k,
                                Rng& rng);

MarginalEstimate SskmLogMarginal(const PosteriorGrid& grid,
                                 const TargetText& y,
                                 const ConditionalScorer& scorer,
                                 std::size_t k, Rng& rng);

// S-SKM from already drawn samples.
double SskmFromSamples(std::span<const PhonemeSequence> samples,
                       const TargetText& y, const ConditionalScorer& scorer);

struct ObjectiveRecord {
  const PosteriorGrid* grid = nullptr;
  TargetText target;
};

struct ObjectiveOptions {
  Method method = Method::kSskm;
  std::size_t k = 8;
  // TKM only: beam used to build the hypothesis list.
  std::size_t beam_width = 16;
  bool normalize_weights = false;
  std::uint64_t seed = 0;
  // Mixed into every record's stream. Leave at 0 to reuse the same samples
  // on every pass; vary it to redraw.
  std::uint64_t epoch = 0;
};

struct ObjectiveResult {
  double mean_neg_log_marginal = 0.0;
  std::vector<MarginalEstimate> per_record;
};

// Mean of -log p(y|x) over the batch. Each record samples from its own stream
// derived from (seed, utterance id, epoch).
ObjectiveResult BatchObjective(std::span<const ObjectiveRecord> records,
                               const ConditionalScorer& scorer,
                               const ObjectiveOptions& options);

// Log marginal for one record under `options`, using the same stream
// derivation as BatchObjective.
MarginalEstimate EstimateRecord(const ObjectiveRecord& record,
                                const ConditionalScorer& scorer,
                                const ObjectiveOptions& options);

}  // namespace p2g

#endif  // P2G_MARGINAL_H_
