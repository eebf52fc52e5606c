# Copyright 2026 The p2g Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
import json
import math

import pytest

import p2g

HALF = math.log(0.5)


def uniform_grid(frames, symbols=("a",), uid="u"):
    p = math.log(1.0 / (len(symbols) + 1))
    return p2g.PosteriorGrid(uid, p2g.Alphabet(list(symbols)), [[p] * (len(symbols) + 1)] * frames)


def test_collapse():
    assert p2g.collapse([1, 1, 0, 1, 2, 2], 3) == [1, 1, 2]
    assert p2g.collapse([0], 3) == []
    with pytest.raises(ValueError):
        p2g.collapse([5], 3)


def test_forward_two_frames():
    g = uniform_grid(2)
    assert math.exp(p2g.forward_logprob(g, [1])) == pytest.approx(0.75)
    assert math.exp(p2g.forward_logprob(g, [])) == pytest.approx(0.25)
    assert p2g.forward_logprob(g, [1, 1]) == p2g.LOG_ZERO


def test_grid_validation_and_json():
    with pytest.raises(p2g.InvalidInput):
        p2g.PosteriorGrid("u", p2g.Alphabet(["a"]), [[0.0, 0.0]])
    g = uniform_grid(3, ("a", "b"))
    back = p2g.PosteriorGrid.from_json(g.to_json())
    assert back.rows() == g.rows()
    assert json.loads(g.to_json())["id"] == "u"


def test_beam_and_sampling():
    g = p2g.PosteriorGrid("x", p2g.Alphabet(["a", "b"]), [[math.log(0.5), math.log(0.3), math.log(0.2)]])
    top = p2g.prefix_beam_search(g, 3, 3)
    assert [seq for seq, _ in top] == [[], [1], [2]]
    assert top[1][1] == pytest.approx(math.log(0.3))
    with pytest.raises(p2g.InvalidArgument):
        p2g.prefix_beam_search(g, 2, 3)
    assert p2g.sample_hypotheses(g, 8, seed=3) == p2g.sample_hypotheses(g, 8, seed=3)


def test_scorer_marginals_and_decode():
    alphabet = p2g.Alphabet(["a", "b"])
    scorer = p2g.NGramScorer.train(alphabet, [([1, 2], "en", "ab"), ([2], "es", "b")], order=2, alpha=0.5)
    assert scorer.languages == ["en", "es"]
    again = p2g.NGramScorer.from_json(scorer.to_json())
    assert again.log_score("en", "ab", [1, 2]) == scorer.log_score("en", "ab", [1, 2])
    top = scorer.generate_top_s([1, 2], 3, 4)
    assert top[0][2] == pytest.approx(scorer.log_score(top[0][0], top[0][1], [1, 2]))

    g = uniform_grid(2, ("a", "b"))
    hyps = p2g.prefix_beam_search(g, 100, 100)
    exact = p2g.tkm_log_marginal(hyps, "en", "ab", scorer)
    skm = p2g.skm_log_marginal(g, "en", "ab", scorer, k=20000, seed=1)
    assert skm == pytest.approx(exact, abs=1e-9)
    sskm = p2g.sskm_log_marginal(g, "en", "ab", scorer, k=100000, seed=1)
    assert math.exp(sskm) == pytest.approx(math.exp(exact), rel=0.02)

    lid, text, pool = p2g.decode(g, scorer, k=8, s=4)
    assert (lid, text) == min((l, t) for l, t, p in pool if p >= pool[0][2] - 1e-12)


def test_training_lines_and_oversampling():
    line = p2g.serialize_training_line(["h", "ə", "l", "oʊ"], "en", "hello")
    assert line == "<ipa> h ə l oʊ | <lid:en> hello"
    assert p2g.parse_training_line(line) == (["h", "ə", "l", "oʊ"], "en", "hello")
    with pytest.raises(ValueError):
        p2g.serialize_training_line(["a|b"], "en", "x")

    records = [
        {"id": "k1", "lang": "ky", "dur_sec": 900.0, "phonemes": ["a"], "text": "a"},
        {"id": "e1", "lang": "en", "dur_sec": 3600.0, "phonemes": ["a"], "text": "a"},
    ]
    jsonl = "".join(json.dumps(r) + "\n" for r in records)
    out = p2g.oversample_manifest(jsonl, 1.0, seed=7)
    assert out == p2g.oversample_manifest(jsonl, 1.0, seed=7)
    ky = [json.loads(l) for l in out.splitlines() if '"ky"' in l]
    assert len(ky) == 4 and [r.get("rep", 0) for r in ky] == [0, 1, 2, 3]


def test_metrics():
    assert p2g.edit_distance(["a", "b", "c"], ["a", "x", "c"]) == 1
    assert p2g.error_rate([("a b c d e", "a b x d e")]) == pytest.approx(20.0)
    macro, weighted = p2g.aggregate({"a": 10.0, "b": 20.0}, {"a": 3.0, "b": 1.0})
    assert (macro, weighted) == (pytest.approx(15.0), pytest.approx(12.5))
