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

// Exhaustive reference computations for tiny instances. Nothing here calls
// into the recursions it is meant to check: paths are enumerated one by one,
// probabilities are summed in linear space with long double accumulators.

#ifndef P2G_ORACLE_BRUTE_FORCE_H_
#define P2G_ORACLE_BRUTE_FORCE_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "p2g/ctc.h"
#include "p2g/scorer.h"

namespace p2g::oracle {

using Labels = std::vector<Label>;

// Calls fn(path, probability) for all (V+1)^T frame paths.
void ForEachPath(const PosteriorGrid& grid,
                 const std::function<void(const Labels&, long double)>& fn);

// Collapse written as: split into runs of equal labels, keep one label per
// run, then drop blanks.
Labels RunCollapse(const Labels& path);

// Probability of every reachable collapsed sequence.
std::map<Labels, long double> CollapsedDistribution(const PosteriorGrid& grid);

// sum_pi p(pi | x) * cond(B(pi)).
long double PathMarginal(const PosteriorGrid& grid,
                         const std::function<long double(const Labels&)>& cond);

// Every string of 0..max_len units drawn from `units`, shortest first.
std::vector<std::string> AllStrings(const std::vector<std::string>& units,
                                    std::size_t max_len);

// Plain recursion over (i, j); exponential, keep inputs short.
std::size_t RecursiveEditDistance(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b);

struct TextScore {
  TargetText text;
  long double prob = 0.0;
};

// sum_h p(h|x) p(y|h) for every y over the scorer's languages and characters
// up to max_len, with h ranging over every reachable sequence. Sorted by
// probability desc, ties by (lid, text).
std::vector<TextScore> ExhaustiveCascade(const PosteriorGrid& grid,
                                         const ConditionalScorer& scorer,
                                         const std::vector<std::string>& chars,
                                         std::size_t max_len);

// Winner under the decode tie rule: among entries whose log value is within
// `tolerance` of the best, the smallest (lid, text).
TargetText TieBrokenArgmax(const std::vector<TextScore>& scored,
                           double tolerance);

}  // namespace p2g::oracle

#endif  // P2G_ORACLE_BRUTE_FORCE_H_
