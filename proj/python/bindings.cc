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


// Python bindings for the core operations. Grids are passed as nested lists
// (or anything iterable) of natural-log probabilities, blank in column 0.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "p2g/common.h"
#include "p2g/ctc.h"
#include "p2g/datapipe.h"
#include "p2g/decoder.h"
#include "p2g/io.h"
#include "p2g/marginal.h"
#include "p2g/metrics.h"
#include "p2g/scorer.h"

namespace py = pybind11;

namespace p2g {
namespace {

PhonemeSequence ToSeq(const std::vector<Label>& tokens) { return {tokens}; }

py::list HypsToPy(const std::vector<ScoredHypothesis>& hyps) {
  py::list out;
  for (const auto& h : hyps) out.append(py::make_tuple(h.sequence.tokens, h.log_score));
  return out;
}

std::vector<ScoredHypothesis> HypsFromPy(
    const std::vector<std::pair<std::vector<Label>, double>>& hyps) {
  std::vector<ScoredHypothesis> out;
  for (const auto& [tokens, score] : hyps) out.push_back({ToSeq(tokens), score});
  return out;
}

py::list TextsToPy(const std::vector<ScoredText>& texts) {
  py::list out;
  for (const auto& t : texts) {
    out.append(py::make_tuple(t.text.lid, t.text.text, t.log_prob));
  }
  return out;
}

}  // namespace
}  // namespace p2g

PYBIND11_MODULE(_core, m) {
  using namespace p2g;
  m.doc() = "CTC phoneme hypotheses, marginal likelihoods and decoding";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.attr("LOG_ZERO") = kLogZero;
  m.attr("BLANK") = kBlank;

  py::class_<Alphabet>(m, "Alphabet")
      .def(py::init<std::vector<std::string>>(), py::arg("symbols"))
      .def_property_readonly("symbols", &Alphabet::symbols)
      .def("label_of", &Alphabet::LabelOf)
      .def("symbol_of", &Alphabet::SymbolOf)
      .def("__len__", &Alphabet::size)
      .def("__eq__", &Alphabet::operator==);

  py::class_<PosteriorGrid>(m, "PosteriorGrid")
      .def(py::init<std::string, Alphabet, const std::vector<std::vector<double>>&, bool>(),
           py::arg("utterance_id"), py::arg("alphabet"), py::arg("logp"),
           py::arg("renormalize") = false)
      .def_property_readonly("utterance_id", &PosteriorGrid::utterance_id)
      .def_property_readonly("alphabet", &PosteriorGrid::alphabet)
      .def_property_readonly("frames", &PosteriorGrid::frames)
      .def("rows", &PosteriorGrid::Rows)
      .def("remap_to", &PosteriorGrid::RemapTo)
      .def("to_json", &GridToJson)
      .def_static("from_json", [](const std::string& line) { return ParseGridLine(line); });

  m.def("collapse",
        [](const std::vector<Label>& path, std::size_t num_labels) {
          return Collapse(FramePath{path}, num_labels).tokens;
        },
        py::arg("path"), py::arg("num_labels"));
  m.def("forward_logprob",
        [](const PosteriorGrid& g, const std::vector<Label>& h) {
          return ForwardLogProb(g, ToSeq(h));
        },
        py::arg("grid"), py::arg("h"));
  m.def("sample_hypotheses",
        [](const PosteriorGrid& g, std::size_t k, std::uint64_t seed, double temperature) {
          Rng rng = Rng::ForStream(seed, g.utterance_id());
          std::vector<std::vector<Label>> out;
          for (auto& h : SampleHypotheses(g, k, rng, temperature)) out.push_back(h.tokens);
          return out;
        },
        py::arg("grid"), py::arg("k"), py::arg("seed"), py::arg("temperature") = 1.0);
  m.def("prefix_beam_search",
        [](const PosteriorGrid& g, std::size_t beam_width, std::size_t k) {
          return HypsToPy(PrefixBeamSearch(g, beam_width, k));
        },
        py::arg("grid"), py::arg("beam_width"), py::arg("k"));

  py::class_<NGramScorer>(m, "NGramScorer")
      .def_static(
          "train",
          [](const Alphabet& alphabet,
             const std::vector<std::tuple<std::vector<Label>, std::string, std::string>>& pairs,
             int order, int window, double alpha, std::vector<std::string> languages) {
            std::vector<TrainingPair> data;
            for (const auto& [h, lid, text] : pairs) data.push_back({ToSeq(h), {lid, text}});
            NGramOptions options{order, window, alpha, std::move(languages)};
            return NGramScorer::Train(alphabet, data, options);
          },
          py::arg("alphabet"), py::arg("pairs"), py::arg("order") = 3,
          py::arg("window") = 1, py::arg("alpha") = 0.1,
          py::arg("languages") = std::vector<std::string>{})
      .def_property_readonly("alphabet", &NGramScorer::alphabet)
      .def_property_readonly("languages", &NGramScorer::languages)
      .def_property_readonly("characters", &NGramScorer::characters)
      .def("log_score",
           [](const NGramScorer& s, const std::string& lid, const std::string& text,
              const std::vector<Label>& h) { return s.LogScore({lid, text}, ToSeq(h)); },
           py::arg("lid"), py::arg("text"), py::arg("h"))
      .def("generate_top_s",
           [](const NGramScorer& s, const std::vector<Label>& h, std::size_t n,
              std::size_t max_len) { return TextsToPy(s.GenerateTopS(ToSeq(h), n, max_len)); },
           py::arg("h"), py::arg("s"), py::arg("max_len") = 64)
      .def("predict_lid",
           [](const NGramScorer& s, const std::vector<Label>& h) {
             return s.PredictLid(ToSeq(h));
           })
      .def("to_json", &NGramScorer::ToJson)
      .def_static("from_json", &NGramScorer::FromJson);

  m.def("tkm_log_marginal",
        [](const std::vector<std::pair<std::vector<Label>, double>>& hyps,
           const std::string& lid, const std::string& text, const NGramScorer& scorer,
           bool normalize_weights) {
          return TkmLogMarginal(HypsFromPy(hyps), {lid, text}, scorer, normalize_weights)
              .log_marginal;
        },
        py::arg("hyps"), py::arg("lid"), py::arg("text"), py::arg("scorer"),
        py::arg("normalize_weights") = false);
  m.def("skm_log_marginal",
        [](const PosteriorGrid& g, const std::string& lid, const std::string& text,
           const NGramScorer& scorer, std::size_t k, std::uint64_t seed) {
          Rng rng = Rng::ForStream(seed, g.utterance_id());
          return SkmLogMarginal(g, {lid, text}, scorer, k, rng).log_marginal;
        },
        py::arg("grid"), py::arg("lid"), py::arg("text"), py::arg("scorer"),
        py::arg("k"), py::arg("seed"));
  m.def("sskm_log_marginal",
        [](const PosteriorGrid& g, const std::string& lid, const std::string& text,
           const NGramScorer& scorer, std::size_t k, std::uint64_t seed) {
          Rng rng = Rng::ForStream(seed, g.utterance_id());
          return SskmLogMarginal(g, {lid, text}, scorer, k, rng).log_marginal;
        },
        py::arg("grid"), py::arg("lid"), py::arg("text"), py::arg("scorer"),
        py::arg("k"), py::arg("seed"));

  m.def("decode",
        [](const PosteriorGrid& g, const NGramScorer& scorer, std::size_t k,
           std::size_t s, std::size_t beam_width, std::size_t max_len,
           bool normalize_weights) {
          const auto r = Decode(g, scorer, {k, s, beam_width, max_len, normalize_weights});
          return py::make_tuple(r.best.lid, r.best.text, TextsToPy(r.pool));
        },
        py::arg("grid"), py::arg("scorer"), py::arg("k") = 8, py::arg("s") = 4,
        py::arg("beam_width") = 16, py::arg("max_len") = 64,
        py::arg("normalize_weights") = false);

  m.def("serialize_training_line",
        [](const std::vector<std::string>& phonemes, const std::string& lid,
           const std::string& text) { return SerializeTrainingLine(phonemes, {lid, text}); },
        py::arg("phonemes"), py::arg("lid"), py::arg("text"));
  m.def("parse_training_line", [](const std::string& line) {
    auto t = ParseTrainingLine(line);
    return py::make_tuple(t.phonemes, t.text.lid, t.text.text);
  });
  m.def("oversample_manifest",
        [](const std::string& jsonl, double target_hours, std::uint64_t seed) {
          std::istringstream in(jsonl);
          return ManifestToJsonl(
              OversampleManifest(ReadManifest(in, "<manifest>"), target_hours, seed));
        },
        py::arg("jsonl"), py::arg("target_hours"), py::arg("seed"),
        "Balances a JSONL manifest; returns the balanced JSONL.");

  m.def("edit_distance",
        [](const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
          return EditDistance(ref, hyp);
        });
  m.def("error_rate",
        [](const std::vector<std::pair<std::string, std::string>>& ref_hyp) {
          std::vector<std::pair<TokenSeq, TokenSeq>> pairs;
          for (const auto& [r, h] : ref_hyp) pairs.emplace_back(TokenizeWords(r), TokenizeWords(h));
          return ErrorRate(pairs);
        },
        py::arg("pairs"), "Corpus-pooled word error rate in percent.");
  m.def("aggregate",
        [](const std::map<std::string, double>& values,
           const std::map<std::string, double>& hours) {
          const auto a = AggregateByLanguage(values, hours);
          return py::make_tuple(a.macro_avg, a.hours_weighted_avg);
        },
        py::arg("values"), py::arg("hours"));
}
