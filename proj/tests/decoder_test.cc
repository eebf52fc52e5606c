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


#include <cmath>

#include <doctest.h>

#include "brute_force.h"
#include "checks.h"
#include "p2g/common.h"
#include "p2g/decoder.h"
#include "p2g/synthetic.h"
#include "test_util.h"

namespace p2g {
namespace {

using testing::Seq;

TEST_CASE("pool with one hypothesis and one candidate") {
  const std::vector<ScoredHypothesis> hyps = {{Seq({1}), -0.5}};
  const std::vector<std::vector<ScoredText>> cands = {{{{"en", "a"}, -1.5}}};
  const auto pool = PoolAndRescore(hyps, cands);
  REQUIRE(pool.size() == 1);
  CHECK(pool[0].text == TargetText{"en", "a"});
  CHECK(pool[0].log_prob == doctest::Approx(-2.0));
}

TEST_CASE("pool sums shared candidates") {
  const std::vector<ScoredHypothesis> hyps = {{Seq({1}), -0.5}, {Seq({2}), -1.0}};
  const std::vector<std::vector<ScoredText>> cands = {
      {{{"en", "a"}, -1.0}, {{"en", "b"}, -2.0}},
      {{{"en", "a"}, -0.7}}};
  const auto pool = PoolAndRescore(hyps, cands);
  REQUIRE(pool.size() == 2);
  CHECK(pool[0].text.text == "a");
  CHECK(pool[0].log_prob == doctest::Approx(LogAdd(-1.5, -1.7)));
  CHECK(pool[0].log_prob > -1.5);
  CHECK(pool[1].log_prob == doctest::Approx(-2.5));
  CHECK_THROWS_AS(PoolAndRescore(hyps, std::span(cands.data(), 1)), InvalidArgument);
}

TEST_CASE("pool matches a naive recomputation") {
  Rng rng(31);
  const std::vector<std::string> texts = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.Below(4);
    std::vector<ScoredHypothesis> hyps;
    std::vector<std::vector<ScoredText>> cands(k);
    std::map<TargetText, double> naive;
    for (std::size_t i = 0; i < k; ++i) {
      const double w = -3.0 * rng.Uniform();
      hyps.push_back({Seq({static_cast<Label>(i + 1)}), w});
      std::vector<std::string> pool_texts = texts;
      for (std::size_t j = 1 + rng.Below(4); j > 0; --j) {
        const auto pick = rng.Below(pool_texts.size());
        const double lp = -3.0 * rng.Uniform();
        const TargetText t{rng.Below(2) ? "en" : "es", pool_texts[pick]};
        pool_texts.erase(pool_texts.begin() + static_cast<long>(pick));
        cands[i].push_back({t, lp});
        naive[t] += std::exp(w + lp);
      }
    }
    const auto pool = PoolAndRescore(hyps, cands);
    std::map<TargetText, double> got;
    for (const auto& c : pool) got[c.text] += std::exp(c.log_prob);
    REQUIRE(got.size() >= 1);
    for (const auto& [t, v] : naive) {
      CHECK(got[t] == doctest::Approx(v).epsilon(1e-12));
    }
    for (std::size_t i = 1; i < pool.size(); ++i) {
      CHECK(pool[i - 1].log_prob >= pool[i].log_prob);
    }
  }
}

TEST_CASE("select best breaks ties lexicographically") {
  const std::vector<ScoredText> pool = {{{"es", "b"}, -1.0},
                                        {{"en", "z"}, -1.0},
                                        {{"en", "c"}, -1.0 - 1e-14},
                                        {{"aa", "a"}, -2.0}};
  CHECK(SelectBest(pool).text == TargetText{"en", "c"});
  CHECK_THROWS_AS(SelectBest({}), InvalidArgument);
}

TEST_CASE("k=1, s=1 is the one-best cascade") {
  Rng rng(32);
  const auto alphabet = NumberedAlphabet(2);
  const auto grid = RandomGrid("g", alphabet, 4, rng);
  const auto scorer = oracle::RandomTinyScorer(alphabet, {"x", "y"}, rng, 0.5);
  DecodeOptions options;
  options.k = 1;
  options.s = 1;
  options.max_len = 4;
  const auto result = Decode(grid, scorer, options);
  const auto top_h = PrefixBeamSearch(grid, options.beam_width, 1).front();
  const auto top_y = scorer.GenerateTopS(top_h.sequence, 1, 4).front();
  CHECK(result.best == top_y.text);
  CHECK(result.k_used == 1);
  REQUIRE(result.pool.size() == 1);
  CHECK(result.pool[0].log_prob == doctest::Approx(top_h.log_score + top_y.log_prob));
}

TEST_CASE("decode matches the exhaustive cascade") {
  Rng rng(33);
  const std::vector<std::string> chars = {"x", "y", "z"};
  const auto alphabet = NumberedAlphabet(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto grid = RandomGrid("g", alphabet, 1 + rng.Below(4), rng);
    const auto scorer = oracle::RandomTinyScorer(alphabet, chars, rng, 0.5);
    const auto exhaustive = oracle::ExhaustiveCascade(grid, scorer, chars, 3);
    DecodeOptions options;
    options.k = oracle::CollapsedDistribution(grid).size();
    options.beam_width = 1000;
    options.s = exhaustive.size();
    options.max_len = 3;
    const auto result = Decode(grid, scorer, options);
    CHECK(result.best == oracle::TieBrokenArgmax(exhaustive, kTieTolerance));
    CHECK(result.k_used == options.k);
  }
}

TEST_CASE("decode arguments") {
  Rng rng(34);
  const auto alphabet = NumberedAlphabet(2);
  const auto grid = RandomGrid("g", alphabet, 3, rng);
  const auto scorer = oracle::RandomTinyScorer(alphabet, {"x"}, rng, 0.5);
  DecodeOptions options;
  options.k = 0;
  CHECK_THROWS_AS(Decode(grid, scorer, options), InvalidArgument);
  options = {};
  options.s = 0;
  CHECK_THROWS_AS(Decode(grid, scorer, options), InvalidArgument);
  // More hypotheses requested than exist: all of them are used.
  options = {};
  options.k = 500;
  options.beam_width = 500;
  CHECK(Decode(grid, scorer, options).k_used ==
        oracle::CollapsedDistribution(grid).size());
}

}  // namespace
}  // namespace p2g
