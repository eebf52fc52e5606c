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

#include "p2g/marginal.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "p2g/common.h"

namespace p2g {

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kTkm:
      return "tkm";
    case Method::kSkm:
      return "skm";
    case Method::kSskm:
      return "sskm";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  if (name == "tkm") return Method::kTkm;
  if (name == "skm") return Method::kSkm;
  if (name == "sskm") return Method::kSskm;
  throw InvalidArgument("unknown method '" + std::string(name) +
                        "' (expected tkm, skm or sskm)");
}

MarginalEstimate TkmLogMarginal(std::span<const ScoredHypothesis> hyps,
                                const TargetText& y,
                                const ConditionalScorer& scorer,
                                bool normalize_weights) {
  if (hyps.empty()) throw InvalidArgument("TKM needs at least one hypothesis");
  double shift = 0.0;
  if (normalize_weights) {
    LogSumExp norm;
    for (const auto& hyp : hyps) norm.Add(hyp.log_score);
    shift = norm.Value();
    if (IsLogZero(shift)) {
      throw InvalidArgument("TKM hypotheses carry no probability mass");
    }
  }
  LogSumExp acc;
  for (const auto& hyp : hyps) {
    if (IsLogZero(hyp.log_score)) continue;
    acc.Add(hyp.log_score - shift + scorer.LogScore(y, hyp.sequence));
  }
  return {acc.Value(), Method::kTkm, hyps.size()};
}

MarginalEstimate SkmLogMarginal(const PosteriorGrid& grid, const TargetText& y,
                                const ConditionalScorer& scorer, std::size_t k,
                                Rng& rng) {
  const auto samples = SampleHypotheses(grid, k, rng);
  // Weights are per distinct sequence, not per draw.
  const std::set<PhonemeSequence> distinct(samples.begin(), samples.end());
  LogSumExp acc;
  for (const auto& h : distinct) {
    acc.Add(ForwardLogProb(grid, h) + scorer.LogScore(y, h));
  }
  return {acc.Value(), Method::kSkm, distinct.size()};
}

double SskmFromSamples(std::span<const PhonemeSequence> samples,
                       const TargetText& y, const ConditionalScorer& scorer) {
  if (samples.empty()) throw InvalidArgument("S-SKM needs at least one sample");
  LogSumExp acc;
  for (const auto& h : samples) acc.Add(scorer.LogScore(y, h));
  return acc.Value() - std::log(static_cast<double>(samples.size()));
}

MarginalEstimate SskmLogMarginal(const PosteriorGrid& grid,
                                 const TargetText& y,
                                 const ConditionalScorer& scorer,
                                 std::size_t k, Rng& rng) {
  const auto samples = SampleHypotheses(grid, k, rng);
  return {SskmFromSamples(samples, y, scorer), Method::kSskm, k};
}

MarginalEstimate EstimateRecord(const ObjectiveRecord& record,
                                const ConditionalScorer& scorer,
                                const ObjectiveOptions& options) {
  if (record.grid == nullptr) throw InvalidArgument("record without a grid");
  const PosteriorGrid& grid = *record.grid;
  switch (options.method) {
    case Method::kTkm: {
      const auto hyps =
          PrefixBeamSearch(grid, std::max(options.beam_width, options.k),
                           options.k);
      return TkmLogMarginal(hyps, record.target, scorer,
                            options.normalize_weights);
    }
    case Method::kSkm: {
      Rng rng =
          Rng::ForStream(options.seed, grid.utterance_id(), options.epoch);
      return SkmLogMarginal(grid, record.target, scorer, options.k, rng);
    }
    case Method::kSskm: {
      Rng rng =
          Rng::ForStream(options.seed, grid.utterance_id(), options.epoch);
      return SskmLogMarginal(grid, record.target, scorer, options.k, rng);
    }
  }
  throw InvalidArgument("unknown method");
}

ObjectiveResult BatchObjective(std::span<const ObjectiveRecord> records,
                               const ConditionalScorer& scorer,
                               const ObjectiveOptions& options) {
  if (records.empty()) throw InvalidArgument("empty batch");
  ObjectiveResult result;
  result.per_record.reserve(records.size());
  double sum = 0.0;
  for (const auto& record : records) {
    result.per_record.push_back(EstimateRecord(record, scorer, options));
    sum -= result.per_record.back().log_marginal;
  }
  result.mean_neg_log_marginal = sum / static_cast<double>(records.size());
  return result;
}

}  // namespace p2g
