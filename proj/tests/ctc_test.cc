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
#include <map>

#include <doctest.h>

#include "brute_force.h"
#include "p2g/common.h"
#include "p2g/ctc.h"
#include "p2g/synthetic.h"
#include "test_util.h"

namespace p2g {
namespace {

using testing::GridFromProbs;
using testing::Path;
using testing::Seq;

constexpr Label a = 1;
constexpr Label b = 2;

TEST_CASE("log-space helpers") {
  CHECK(LogAdd(kLogZero, kLogZero) == kLogZero);
  CHECK(LogAdd(std::log(0.25), kLogZero) == doctest::Approx(std::log(0.25)));
  CHECK(LogAdd(std::log(0.25), std::log(0.5)) == doctest::Approx(std::log(0.75)));
  const std::vector<double> xs = {-1000.0, -1000.0, kLogZero};
  CHECK(LogSumExpOf(xs) == doctest::Approx(-1000.0 + std::log(2.0)));
  CHECK(LogSumExpOf(std::vector<double>{}) == kLogZero);
}

TEST_CASE("utf-8 splitting") {
  CHECK(SplitCodePoints("aə€😀") ==
        std::vector<std::string>{"a", "ə", "€", "😀"});
  CHECK_THROWS_AS(SplitCodePoints("\xC0\x80"), InvalidInput);   // overlong
  CHECK_THROWS_AS(SplitCodePoints("\xED\xA0\x80"), InvalidInput);  // surrogate
  CHECK_THROWS_AS(SplitCodePoints("\xE2\x82"), InvalidInput);   // truncated
  const std::u32string cps = U"тест";
  CHECK(DecodeUtf8(EncodeUtf8(cps)) == std::vector<char32_t>(cps.begin(), cps.end()));
}

TEST_CASE("stream rng depends only on seed, key and epoch") {
  auto draw = [](Rng r) { return r.NextU64(); };
  CHECK(draw(Rng::ForStream(1, "x")) == draw(Rng::ForStream(1, "x")));
  CHECK(draw(Rng::ForStream(1, "x")) != draw(Rng::ForStream(1, "y")));
  CHECK(draw(Rng::ForStream(1, "x")) != draw(Rng::ForStream(2, "x")));
  CHECK(draw(Rng::ForStream(1, "x", 0)) != draw(Rng::ForStream(1, "x", 1)));
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.Uniform();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK(rng.Below(7) < 7u);
  }
}

TEST_CASE("alphabet") {
  const Alphabet alpha({"a", "b"});
  CHECK(alpha.size() == 2);
  CHECK(alpha.num_labels() == 3);
  CHECK(alpha.LabelOf("b") == 2);
  CHECK(alpha.Find("z") == -1);
  CHECK(alpha.SymbolOf(1) == "a");
  CHECK_THROWS_AS(alpha.LabelOf("z"), InvalidInput);
  CHECK_THROWS_AS(alpha.SymbolOf(kBlank), InvalidInput);
  CHECK_THROWS_AS(alpha.SymbolOf(3), InvalidInput);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), InvalidInput);
  CHECK_THROWS_AS(Alphabet({""}), InvalidInput);
}

TEST_CASE("posterior grid validation") {
  const Alphabet alpha({"a"});
  const double h = std::log(0.5);
  CHECK_NOTHROW(PosteriorGrid("u", alpha, {{h, h}}));
  CHECK_NOTHROW(PosteriorGrid("u", alpha, {{0.0, kLogZero}}));
  CHECK_THROWS_AS(PosteriorGrid("u", alpha, {{h, h, h}}), InvalidInput);
  CHECK_THROWS_AS(PosteriorGrid("u", alpha, {{h, std::log(0.4)}}), InvalidInput);
  CHECK_THROWS_AS(PosteriorGrid("u", alpha, {{0.5, std::log(0.4)}}), InvalidInput);
  CHECK_THROWS_AS(PosteriorGrid("u", alpha, {{std::nan(""), 0.0}}), InvalidInput);
  CHECK_THROWS_AS(PosteriorGrid("u", alpha, {}), InvalidInput);
  const PosteriorGrid fixed("u", alpha, {{0.0, 0.0}}, /*renormalize=*/true);
  CHECK(fixed.logp(0, a) == doctest::Approx(h));
}

TEST_CASE("remap to a superset alphabet") {
  const auto g = GridFromProbs({"b"}, {{0.4, 0.6}});
  const auto r = g.RemapTo(Alphabet({"a", "b", "c"}));
  CHECK(r.num_labels() == 4);
  CHECK(r.logp(0, kBlank) == doctest::Approx(std::log(0.4)));
  CHECK(r.logp(0, 1) == kLogZero);
  CHECK(r.logp(0, 2) == doctest::Approx(std::log(0.6)));
  CHECK(r.logp(0, 3) == kLogZero);
  CHECK_THROWS_AS(g.RemapTo(Alphabet({"a"})), InvalidInput);
}

TEST_CASE("collapse") {
  CHECK(Collapse(Path({kBlank}), 3).empty());
  CHECK(Collapse(Path({a, a, kBlank, a, b, b}), 3) == Seq({a, a, b}));
  CHECK(Collapse(Path({a, b, b, kBlank, b}), 3) == Seq({a, b, b}));
  CHECK(Collapse(Path({}), 3).empty());
  CHECK_THROWS_AS(Collapse(Path({a, 3}), 3), InvalidInput);
  CHECK_THROWS_AS(Collapse(Path({-1}), 3), InvalidInput);
}

TEST_CASE("collapse agrees with run-based definition") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Label> labels(rng.Below(9));
    for (auto& l : labels) l = static_cast<Label>(rng.Below(3));
    CHECK(Collapse(Path(labels), 3).tokens == oracle::RunCollapse(labels));
  }
}

TEST_CASE("forward probability on uniform grids") {
  const auto t1 = GridFromProbs({"a"}, {{0.5, 0.5}});
  CHECK(std::exp(ForwardLogProb(t1, Seq({a}))) == doctest::Approx(0.5));
  CHECK(std::exp(ForwardLogProb(t1, Seq({}))) == doctest::Approx(0.5));

  const auto t2 = GridFromProbs({"a"}, {{0.5, 0.5}, {0.5, 0.5}});
  CHECK(std::exp(ForwardLogProb(t2, Seq({a}))) == doctest::Approx(0.75));
  CHECK(std::exp(ForwardLogProb(t2, Seq({}))) == doctest::Approx(0.25));
  CHECK(ForwardLogProb(t2, Seq({a, a})) == kLogZero);
  CHECK(ForwardLogProb(t2, Seq({a, a, a})) == kLogZero);
  CHECK_THROWS_AS(ForwardLogProb(t2, Seq({2})), InvalidInput);
}

TEST_CASE("forward probability matches path enumeration") {
  Rng rng(9);
  const auto grid = RandomGrid("g", NumberedAlphabet(3), 5, rng);
  const auto dist = oracle::CollapsedDistribution(grid);
  long double total = 0.0L;
  for (const auto& [labels, p] : dist) {
    CHECK(ForwardLogProb(grid, Seq(labels)) ==
          doctest::Approx(std::log(static_cast<double>(p))).epsilon(1e-12));
    total += p;
  }
  CHECK(static_cast<double>(total) == doctest::Approx(1.0));
}

TEST_CASE("sampling a degenerate grid returns the only path") {
  const auto g = GridFromProbs({"a", "b"}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    CHECK(SamplePath(g, rng) == Path({a, kBlank, b}));
  }
  const auto hyps = SampleHypotheses(g, 5, rng);
  CHECK(hyps.size() == 5);
  for (const auto& h : hyps) CHECK(h == Seq({a, b}));
}

TEST_CASE("sampling is reproducible per seed") {
  Rng gen(2);
  const auto g = RandomGrid("g", NumberedAlphabet(3), 6, gen);
  Rng r1(42), r2(42);
  CHECK(SampleHypotheses(g, 8, r1) == SampleHypotheses(g, 8, r2));
  Rng one(42), again(42);
  CHECK(SampleHypotheses(g, 1, one).front() == Collapse(SamplePath(g, again), 4));
  Rng bad(1);
  CHECK_THROWS_AS(SamplePath(g, bad, 0.0), InvalidArgument);
}

TEST_CASE("sample frequencies follow the forward distribution") {
  Rng gen(4);
  const auto g = RandomGrid("g", NumberedAlphabet(2), 4, gen);
  constexpr int kDraws = 200000;
  std::map<std::vector<Label>, int> counts;
  Rng rng(8);
  for (const auto& h : SampleHypotheses(g, kDraws, rng)) ++counts[h.tokens];
  for (const auto& [labels, p] : oracle::CollapsedDistribution(g)) {
    const double pr = static_cast<double>(p);
    const double se = std::sqrt(pr * (1.0 - pr) / kDraws);
    const double freq = static_cast<double>(counts[labels]) / kDraws;
    CHECK(std::abs(freq - std::exp(ForwardLogProb(g, Seq(labels)))) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("prefix beam search single frame") {
  const auto g = GridFromProbs({"a", "b"}, {{0.5, 0.3, 0.2}});
  const auto top = PrefixBeamSearch(g, 3, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].sequence == Seq({}));
  CHECK(top[0].log_score == doctest::Approx(std::log(0.5)));
  CHECK(top[1].sequence == Seq({a}));
  CHECK(top[1].log_score == doctest::Approx(std::log(0.3)));
  CHECK(top[2].sequence == Seq({b}));
  CHECK(top[2].log_score == doctest::Approx(std::log(0.2)));
}

TEST_CASE("prefix beam search arguments and short lists") {
  const auto g = GridFromProbs({"a"}, {{0.5, 0.5}});
  CHECK_THROWS_AS(PrefixBeamSearch(g, 2, 3), InvalidArgument);
  CHECK_THROWS_AS(PrefixBeamSearch(g, 2, 0), InvalidArgument);
  // Only [] and [a] exist.
  CHECK(PrefixBeamSearch(g, 10, 10).size() == 2);
}

TEST_CASE("wide beam matches exhaustive ranking") {
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = RandomGrid("g", NumberedAlphabet(2), 5, rng);
    const auto dist = oracle::CollapsedDistribution(g);
    const auto top = PrefixBeamSearch(g, 1000, dist.size());
    REQUIRE(top.size() == dist.size());
    for (std::size_t i = 0; i < top.size(); ++i) {
      CHECK(top[i].log_score ==
            doctest::Approx(ForwardLogProb(g, top[i].sequence)).epsilon(1e-12));
      if (i > 0) CHECK(top[i - 1].log_score >= top[i].log_score);
    }
  }
}

}  // namespace
}  // namespace p2g
