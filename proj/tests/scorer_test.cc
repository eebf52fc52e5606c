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
#include "p2g/scorer.h"
#include "p2g/synthetic.h"
#include "test_util.h"

namespace p2g {
namespace {

using testing::MemorizingScorer;
using testing::Seq;

const Alphabet kAlpha({"h", "l", "o", "ə"});

TEST_CASE("training preconditions") {
  CHECK_THROWS_AS(NGramScorer::Train(kAlpha, {}), InvalidArgument);
  const std::vector<TrainingPair> pairs = {{Seq({1}), {"en", "h"}}};
  NGramOptions bad;
  bad.order = 0;
  CHECK_THROWS_AS(NGramScorer::Train(kAlpha, pairs, bad), InvalidArgument);
  bad = {};
  bad.alpha = 0.0;
  CHECK_THROWS_AS(NGramScorer::Train(kAlpha, pairs, bad), InvalidArgument);
  bad = {};
  bad.languages = {"fr"};
  CHECK_THROWS_AS(NGramScorer::Train(kAlpha, pairs, bad), InvalidArgument);
  const std::vector<TrainingPair> out_of_range = {{Seq({9}), {"en", "h"}}};
  CHECK_THROWS_AS(NGramScorer::Train(kAlpha, out_of_range), InvalidArgument);
}

TEST_CASE("order-1 scorer memorizes a single pair") {
  const auto h = Seq({1, 4, 2, 3});
  const TargetText y{"en", "hello"};
  const auto scorer = MemorizingScorer(kAlpha, h, y);
  const auto top = scorer.GenerateTopS(h, 1, 16);
  REQUIRE(top.size() == 1);
  CHECK(top[0].text == y);
  CHECK(scorer.PredictLid(h) == "en");
}

TEST_CASE("training is deterministic") {
  Rng r1(3), r2(3);
  const std::vector<std::string> chars = {"x", "y"};
  const auto a = oracle::RandomTinyScorer(NumberedAlphabet(2), chars, r1, 0.5);
  const auto b = oracle::RandomTinyScorer(NumberedAlphabet(2), chars, r2, 0.5);
  CHECK(a.ToJson() == b.ToJson());
}

TEST_CASE("unseen units get positive smoothed probability") {
  const auto h = Seq({1, 2});
  const auto scorer = MemorizingScorer(kAlpha, h, {"en", "hl"}, 2);
  CHECK(std::isfinite(scorer.LogScore({"en", "zz"}, h)));
  CHECK(std::isfinite(scorer.LogScore({"en", "ə"}, Seq({4, 4, 4, 4, 4}))));
  CHECK(scorer.LogScore({"en", "zz"}, h) < scorer.LogScore({"en", "hl"}, h));
  CHECK_THROWS_AS(scorer.LogScore({"xx", "hl"}, h), InvalidInput);
}

TEST_CASE("log score factorizes into stepwise conditionals") {
  Rng rng(21);
  const std::vector<std::string> chars = {"x", "y", "z"};
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(2), chars, rng, 0.3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    PhonemeSequence h;
    for (std::size_t i = rng.Below(4); i > 0; --i) {
      h.tokens.push_back(static_cast<Label>(1 + rng.Below(2)));
    }
    const std::string lid = scorer.languages()[rng.Below(2)];
    std::vector<std::string> text;
    for (std::size_t i = rng.Below(4); i > 0; --i) text.push_back(chars[rng.Below(3)]);

    const auto& lids = scorer.languages();
    const auto lid_pos = std::find(lids.begin(), lids.end(), lid) - lids.begin();
    double expected = scorer.LidLogProbs(h)[lid_pos];
    std::string joined;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      const auto probs = scorer.NextUnitLogProbs(
          h, lid, std::span<const std::string>(text.data(), i));
      if (i == text.size()) {
        expected += probs[NGramScorer::kEos];
      } else {
        const auto& cs = scorer.characters();
        expected += probs[2 + (std::find(cs.begin(), cs.end(), text[i]) - cs.begin())];
        joined += text[i];
      }
    }
    CHECK(scorer.LogScore({lid, joined}, h) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("empty text scores lid plus end of sequence") {
  Rng rng(22);
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(2), {"x", "y"}, rng, 0.3);
  const auto h = Seq({1, 2});
  const double expected = scorer.LidLogProbs(h)[0] +
                          scorer.NextUnitLogProbs(h, "aa", {})[NGramScorer::kEos];
  CHECK(scorer.LogScore({"aa", ""}, h) == doctest::Approx(expected));
}

TEST_CASE("stepwise distributions are normalized") {
  Rng rng(23);
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(2), {"x", "y"}, rng, 0.2);
  const auto h = Seq({2, 1, 1});
  CHECK(std::exp(LogSumExpOf(scorer.LidLogProbs(h))) == doctest::Approx(1.0));
  const std::vector<std::string> prefix = {"y", "x"};
  CHECK(std::exp(LogSumExpOf(scorer.NextUnitLogProbs(h, "bb", prefix))) ==
        doctest::Approx(1.0));
}

TEST_CASE("probability of all bounded texts sums to at most one") {
  Rng rng(24);
  const std::vector<std::string> chars = {"x", "y", "z"};
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(2), chars, rng, 0.5, 3);
  const auto h = Seq({1, 2, 2});
  double total = 0.0;
  for (const auto& lid : scorer.languages()) {
    for (const auto& text : oracle::AllStrings(chars, 3)) {
      total += std::exp(scorer.LogScore({lid, text}, h));
    }
  }
  CHECK(total <= 1.0 + 1e-12);
  CHECK(total > 0.0);
}

TEST_CASE("top-s generation matches exhaustive ranking") {
  Rng rng(25);
  const std::vector<std::string> chars = {"x", "y"};
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(2), chars, rng, 0.5, 2);
  const auto h = Seq({1, 2});
  std::vector<ScoredText> all;
  for (const auto& lid : scorer.languages()) {
    for (const auto& text : oracle::AllStrings(chars, 3)) {
      all.push_back({{lid, text}, scorer.LogScore({lid, text}, h)});
    }
  }
  std::sort(all.begin(), all.end(), ScoredTextBefore);
  const auto top = scorer.GenerateTopS(h, all.size(), 3);
  REQUIRE(top.size() == all.size());
  for (std::size_t i = 0; i < top.size(); ++i) {
    CHECK(top[i].text == all[i].text);
    CHECK(top[i].log_prob == doctest::Approx(all[i].log_prob).epsilon(1e-12));
    CHECK(std::abs(top[i].log_prob - scorer.LogScore(top[i].text, h)) <= 1e-12);
  }
  CHECK_THROWS_AS(scorer.GenerateTopS(h, 0, 3), InvalidArgument);
}

TEST_CASE("language prediction") {
  const auto h = Seq({1, 2});
  const auto one = MemorizingScorer(kAlpha, h, {"tt", "hl"}, 2);
  CHECK(one.PredictLid(Seq({3, 3, 4})) == "tt");

  const std::vector<TrainingPair> sym = {{h, {"ky", "hl"}}, {h, {"en", "hl"}}};
  const auto tie = NGramScorer::Train(kAlpha, sym);
  CHECK(tie.PredictLid(h) == "en");

  Rng rng(26);
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(2), {"x", "y"}, rng, 0.4);
  for (int i = 0; i < 30; ++i) {
    PhonemeSequence q;
    for (std::size_t j = rng.Below(5); j > 0; --j) {
      q.tokens.push_back(static_cast<Label>(1 + rng.Below(2)));
    }
    const auto lids = scorer.LidLogProbs(q);
    if (std::abs(lids[0] - lids[1]) < 1e-9) continue;
    CHECK(scorer.PredictLid(q) == scorer.GenerateTopS(q, 1, 3)[0].text.lid);
  }
}

TEST_CASE("json persistence") {
  Rng rng(27);
  const auto scorer =
      oracle::RandomTinyScorer(NumberedAlphabet(3), {"a", "ы"}, rng, 0.25, 3);
  const auto copy = NGramScorer::FromJson(scorer.ToJson());
  CHECK(copy.ToJson() == scorer.ToJson());
  CHECK(copy.alphabet() == scorer.alphabet());
  CHECK(copy.ratio() == scorer.ratio());
  const auto h = Seq({1, 3, 2});
  CHECK(copy.LogScore({"bb", "aы"}, h) == scorer.LogScore({"bb", "aы"}, h));
  CHECK_THROWS_AS(NGramScorer::FromJson("{"), InvalidInput);
  CHECK_THROWS_AS(NGramScorer::FromJson(R"({"format":"other"})"), InvalidInput);
  CHECK_THROWS_AS(
      NGramScorer::FromJson(R"({"format":"p2g-ngram-scorer","version":99})"),
      InvalidInput);
}

}  // namespace
}  // namespace p2g
