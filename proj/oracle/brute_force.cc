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

#include "brute_force.h"

#include <algorithm>
#include <cmath>

namespace p2g::oracle {

void ForEachPath(const PosteriorGrid& grid,
                 const std::function<void(const Labels&, long double)>& fn) {
  const std::size_t T = grid.frames();
  const auto V1 = static_cast<Label>(grid.num_labels());
  Labels path(T, 0);
  // Odometer over base V+1 digits.
  while (true) {
    long double p = 1.0L;
    for (std::size_t t = 0; t < T; ++t) {
      p *= std::exp(static_cast<long double>(grid.logp(t, path[t])));
    }
    fn(path, p);
    std::size_t t = 0;
    while (t < T && ++path[t] == V1) path[t++] = 0;
    if (t == T) break;
  }
}

Labels RunCollapse(const Labels& path) {
  Labels runs;
  for (std::size_t i = 0; i < path.size();) {
    std::size_t j = i;
    while (j < path.size() && path[j] == path[i]) ++j;
    runs.push_back(path[i]);
    i = j;
  }
  Labels out;
  std::copy_if(runs.begin(), runs.end(), std::back_inserter(out),
               [](Label l) { return l != kBlank; });
  return out;
}

std::map<Labels, long double> CollapsedDistribution(const PosteriorGrid& grid) {
  std::map<Labels, long double> dist;
  ForEachPath(grid, [&](const Labels& path, long double p) {
    dist[RunCollapse(path)] += p;
  });
  return dist;
}

long double PathMarginal(
    const PosteriorGrid& grid,
    const std::function<long double(const Labels&)>& cond) {
  // Group by collapsed sequence first so cond runs once per sequence.
  long double total = 0.0L;
  for (const auto& [h, p] : CollapsedDistribution(grid)) total += p * cond(h);
  return total;
}

std::vector<std::string> AllStrings(const std::vector<std::string>& units,
                                    std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> frontier{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& s : frontier) {
      for (const auto& u : units) next.push_back(s + u);
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

namespace {

std::size_t EditRec(const std::vector<std::string>& a,
                    const std::vector<std::string>& b, std::size_t i,
                    std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const std::size_t sub = EditRec(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
  const std::size_t del = EditRec(a, b, i + 1, j) + 1;
  const std::size_t ins = EditRec(a, b, i, j + 1) + 1;
  return std::min({sub, del, ins});
}

}  // namespace

std::size_t RecursiveEditDistance(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  return EditRec(a, b, 0, 0);
}

std::vector<TextScore> ExhaustiveCascade(const PosteriorGrid& grid,
                                         const ConditionalScorer& scorer,
                                         const std::vector<std::string>& chars,
                                         std::size_t max_len) {
  const auto dist = CollapsedDistribution(grid);
  std::vector<TextScore> out;
  for (const auto& lid : scorer.languages()) {
    for (const auto& s : AllStrings(chars, max_len)) {
      TextScore ts{{lid, s}, 0.0L};
      for (const auto& [h, p] : dist) {
        ts.prob += p * std::exp(static_cast<long double>(
                           scorer.LogScore(ts.text, PhonemeSequence{h})));
      }
      out.push_back(std::move(ts));
    }
  }
  std::sort(out.begin(), out.end(), [](const TextScore& a, const TextScore& b) {
    if (a.prob != b.prob) return a.prob > b.prob;
    return a.text < b.text;
  });
  return out;
}

TargetText TieBrokenArgmax(const std::vector<TextScore>& scored,
                           double tolerance) {
  const long double best = std::log(scored.front().prob);
  TargetText winner = scored.front().text;
  for (const auto& ts : scored) {
    if (best - std::log(ts.prob) > tolerance) break;
    if (ts.text < winner) winner = ts.text;
  }
  return winner;
}

}  // namespace p2g::oracle
