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


#include <doctest.h>

#include "brute_force.h"
#include "checks.h"
#include "p2g/common.h"
#include "p2g/metrics.h"
#include "p2g/synthetic.h"

namespace p2g {
namespace {

using Pairs = std::vector<std::pair<TokenSeq, TokenSeq>>;

TEST_CASE("edit distance") {
  const TokenSeq abc = {"a", "b", "c"};
  CHECK(EditDistance(abc, abc) == 0);
  CHECK(EditDistance(abc, TokenSeq{"a", "x", "c"}) == 1);
  CHECK(EditDistance(abc, TokenSeq{}) == 3);
  CHECK(EditDistance(TokenSeq{}, abc) == 3);
  CHECK(EditDistance(abc, TokenSeq{"b", "c", "d"}) == 2);
}

TEST_CASE("edit distance matches the recursive definition") {
  Rng rng(51);
  const std::vector<std::string> units = {"a", "b", "c"};
  for (int i = 0; i < 500; ++i) {
    TokenSeq x(rng.Below(7)), y(rng.Below(7));
    for (auto& t : x) t = units[rng.Below(3)];
    for (auto& t : y) t = units[rng.Below(3)];
    CHECK(EditDistance(x, y) == oracle::RecursiveEditDistance(x, y));
  }
}

TEST_CASE("word tokenization") {
  CHECK(TokenizeWords("  hello   world ") == TokenSeq{"hello", "world"});
  CHECK(TokenizeWords("a\tb c") == TokenSeq{"a", "b", "c"});
  CHECK(TokenizeWords("").empty());
  // Composed and decomposed forms compare equal.
  CHECK(TokenizeWords("café") == TokenizeWords("café"));
  CHECK(TokenizeWords("й") == TokenizeWords("й"));
}

TEST_CASE("error rate") {
  const TokenSeq five = {"a", "b", "c", "d", "e"};
  CHECK(Round2(ErrorRate(Pairs{{five, five}})) == 0.0);
  CHECK(Round2(ErrorRate(Pairs{{five, TokenSeq{"a", "b", "x", "d", "e"}}})) == 20.0);
  // Pooled: (1 + 0) / (1 + 4) = 20%, not mean(100%, 0%) = 50%.
  const Pairs two = {{{"a"}, {"b"}}, {{"a", "b", "c", "d"}, {"a", "b", "c", "d"}}};
  CHECK(ErrorRate(two) == doctest::Approx(20.0));
  CHECK_THROWS_AS(ErrorRate(Pairs{{TokenSeq{}, TokenSeq{"a"}}}), InvalidArgument);
  CHECK_THROWS_AS(ErrorRate(Pairs{}), InvalidArgument);
}

TEST_CASE("lid accuracy") {
  using L = std::vector<std::pair<std::string, std::string>>;
  CHECK(LidAccuracy(L{{"en", "en"}, {"es", "es"}}) == 100.0);
  CHECK(LidAccuracy(L{{"en", "en"}, {"es", "en"}}) == 50.0);
  CHECK_THROWS_AS(LidAccuracy(L{}), InvalidArgument);
}

TEST_CASE("aggregate") {
  const std::map<std::string, double> v = {{"a", 10.0}, {"b", 20.0}};
  const auto equal = AggregateByLanguage(v, {{"a", 5.0}, {"b", 5.0}});
  CHECK(equal.macro_avg == doctest::Approx(15.0));
  CHECK(equal.hours_weighted_avg == doctest::Approx(equal.macro_avg));
  const auto skew = AggregateByLanguage(v, {{"a", 3.0}, {"b", 1.0}});
  CHECK(skew.hours_weighted_avg == doctest::Approx(12.5));
  CHECK_THROWS_AS(AggregateByLanguage({}, {}), InvalidArgument);
  CHECK_THROWS_AS(AggregateByLanguage(v, {{"a", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(AggregateByLanguage(v, {{"a", 1.0}, {"c", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(AggregateByLanguage(v, {{"a", 0.0}, {"b", 0.0}}), InvalidArgument);
}

TEST_CASE("benchmark table fixtures") {
  const auto& hours = BenchmarkTrainingHours();
  const std::vector<double> e1 = {8.26, 5.84, 10.44, 6.84, 10.07,
                                  6.05, 5.98, 17.94, 10.92, 23.25};
  std::map<std::string, double> values;
  std::size_t i = 0;
  for (const auto& [lang, h] : hours) values[lang] = e1[i++];
  const auto agg = AggregateByLanguage(values, hours);
  CHECK(std::abs(agg.macro_avg - 10.56) <= 0.01);
  CHECK(std::abs(agg.hours_weighted_avg - 8.46) <= 0.01);

  const auto all = oracle::CheckMetricFixtures();
  INFO(all.detail);
  CHECK(all.passed);
}

TEST_CASE("round2") {
  CHECK(Round2(10.555) == doctest::Approx(10.56));
  CHECK(Round2(8.4549) == doctest::Approx(8.45));
}

TEST_CASE("evaluate and report") {
  const std::vector<EvalItem> items = {
      {"en", "the cat sat", "en", "the cat sat"},
      {"en", "a dog", "es", "a fog"},
      {"ky", "бир эки", "ky", "бир"},
  };
  const auto report = Evaluate(items, {{"en", 3.0}, {"ky", 1.0}});
  REQUIRE(report.per_language.size() == 2);
  CHECK(report.per_language.at("en").error_rate == doctest::Approx(20.0));
  CHECK(report.per_language.at("en").lid_acc == doctest::Approx(50.0));
  CHECK(report.per_language.at("ky").error_rate == doctest::Approx(50.0));
  CHECK(report.wer.macro_avg == doctest::Approx(35.0));
  CHECK(report.wer.hours_weighted_avg == doctest::Approx(27.5));
  CHECK(report.lid.macro_avg == doctest::Approx(75.0));

  const auto table = FormatReportTable(report);
  CHECK(table.find("WER") != std::string::npos);
  CHECK(table.find("27.50") != std::string::npos);
  CHECK(FormatReportJson(report).find("\"hours_weighted_avg\"") != std::string::npos);
  CHECK_THROWS_AS(Evaluate({}, {}), InvalidArgument);
  CHECK_THROWS_AS(Evaluate(items, {{"en", 1.0}}), InvalidArgument);
}

}  // namespace
}  // namespace p2g
