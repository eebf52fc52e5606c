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
#include <sstream>

#include <doctest.h>

#include "p2g/common.h"
#include "p2g/io.h"
#include "p2g/synthetic.h"
#include "test_util.h"

namespace p2g {
namespace {

TEST_CASE("grid json round trip keeps log-zero") {
  const auto g = testing::GridFromProbs({"a", "ɪ"}, {{0.5, 0.5, 0.0}, {0.1, 0.2, 0.7}}, "x");
  const auto line = GridToJson(g);
  CHECK(line.find("null") != std::string::npos);
  const auto back = ParseGridLine(line);
  CHECK(back.utterance_id() == "x");
  CHECK(back.alphabet() == g.alphabet());
  CHECK(back.Rows() == g.Rows());
}

TEST_CASE("grid files report the failing line") {
  Rng rng(61);
  const auto good = GridToJson(RandomGrid("ok", NumberedAlphabet(2), 3, rng));
  std::istringstream in(good + "\n\n" + good + "\n{\"id\":\"bad\",\"symbols\":[\"a\"],\"logp\":[[0,0]]}\n");
  try {
    ReadGrids(in, "grids.jsonl");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).starts_with("grids.jsonl:4:"));
  }
  std::istringstream junk("not json\n");
  CHECK_THROWS_AS(ReadGrids(junk, "j"), ParseError);
  std::istringstream renorm("{\"id\":\"r\",\"symbols\":[\"a\"],\"logp\":[[0,0]]}\n");
  CHECK(ReadGrids(renorm, "r", true).size() == 1);
}

TEST_CASE("manifest round trip") {
  CorpusManifest m;
  m.records = {{"u1", "ky", 2.5, {"b", "ɨ", "r"}, "бир", 0},
               {"u1", "ky", 2.5, {"b", "ɨ", "r"}, "бир", 3}};
  const auto text = ManifestToJsonl(m);
  CHECK(text.find("\"rep\":3") != std::string::npos);
  std::istringstream in(text);
  const auto back = ReadManifest(in, "m");
  CHECK(back.records == m.records);
  std::istringstream bad("{\"id\":\"u\",\"lang\":\"en\",\"dur_sec\":0,\"phonemes\":[],\"text\":\"\"}\n");
  CHECK_THROWS_AS(ReadManifest(bad, "m"), ParseError);
}

TEST_CASE("decode lines round trip") {
  DecodeResult r;
  r.best = {"es", "hola"};
  r.pool = {{{"es", "hola"}, -0.25}, {{"en", "ola"}, -3.0}};
  const auto line = DecodeToJson("u9", r);
  const auto back = ParseDecodeLine(line);
  CHECK(back.id == "u9");
  CHECK(back.result.best == r.best);
  REQUIRE(back.result.pool.size() == 2);
  CHECK(back.result.pool[1].text == r.pool[1].text);
  CHECK(back.result.pool[1].log_prob == -3.0);
}

TEST_CASE("training line files") {
  std::istringstream in("<ipa> a b | <lid:en> ab\n\n<ipa> c | <lid:es> c\nbroken\n");
  try {
    ReadTrainingLines(in, "train.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

}  // namespace
}  // namespace p2g
