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

#include "p2g/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "p2g/common.h"

namespace p2g {

namespace {

std::vector<std::vector<double>> LogRows(
    const std::vector<std::vector<double>>& probs) {
  std::vector<std::vector<double>> rows;
  rows.reserve(probs.size());
  for (const auto& p : probs) {
    double total = 0.0;
    for (double v : p) total += v;
    std::vector<double> r;
    r.reserve(p.size());
    for (double v : p) r.push_back(v > 0.0 ? std::log(v / total) : kLogZero);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string PaddedId(const std::string& prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", n);
  return prefix + "-" + buf;
}

}  // namespace

Alphabet NumberedAlphabet(std::size_t symbols) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= symbols; ++i) {
    names.push_back("p" + std::to_string(i));
  }
  return Alphabet(std::move(names));
}

PosteriorGrid RandomGrid(const std::string& id, const Alphabet& alphabet,
                         std::size_t frames, Rng& rng, double sharpness) {
  std::vector<std::vector<double>> probs(frames);
  for (auto& row : probs) {
    row.resize(alphabet.num_labels());
    // -log(U) is Exp(1); normalizing gives a uniform simplex point.
    for (double& v : row) {
      v = std::pow(-std::log(1.0 - rng.Uniform()), sharpness) + 1e-12;
    }
  }
  return PosteriorGrid(id, alphabet, LogRows(probs));
}

PosteriorGrid NoisyReferenceGrid(const std::string& id,
                                 const Alphabet& alphabet,
                                 const std::vector<std::string>& reference,
                                 Rng& rng, const NoisyGridOptions& options) {
  const std::size_t width = alphabet.num_labels();
  std::vector<std::vector<double>> probs;

  auto blank_frame = [&] {
    std::vector<double> row(width, 0.0);
    row[0] = 0.9;
    // A little leakage onto two random symbols.
    for (int i = 0; i < 2 && width > 1; ++i) {
      row[1 + rng.Below(width - 1)] += 0.05;
    }
    probs.push_back(std::move(row));
  };

  blank_frame();
  for (const auto& symbol : reference) {
    const Label target = alphabet.LabelOf(symbol);
    for (std::size_t f = 0; f < options.frames_per_token; ++f) {
      std::vector<double> row(width, 0.0);
      const double peak =
          options.min_peak + (options.max_peak - options.min_peak) * rng.Uniform();
      row[static_cast<std::size_t>(target)] = peak;
      row[0] += options.blank_floor;
      const double rest = std::max(0.0, 1.0 - peak - options.blank_floor);
      // Split the remainder between two competitors.
      const double share = rng.Uniform();
      row[1 + rng.Below(width - 1)] += rest * share;
      row[1 + rng.Below(width - 1)] += rest * (1.0 - share);
      probs.push_back(std::move(row));
    }
    blank_frame();
  }
  return PosteriorGrid(id, alphabet, LogRows(probs));
}

const std::vector<ToyLanguage>& ToyLanguages() {
  static const std::vector<ToyLanguage> kLanguages = {
      {"en",
       {{"th", "θ", false}, {"sh", "ʃ", false}, {"k", "k", false},
        {"t", "t", false},  {"s", "s", false},  {"n", "n", false},
        {"m", "m", false},  {"l", "l", false},  {"a", "æ", true},
        {"e", "ɛ", true},   {"i", "ɪ", true},   {"o", "ɒ", true}}},
      {"es",
       {{"ch", "tʃ", false}, {"ñ", "ɲ", false}, {"c", "k", false},
        {"t", "t", false},   {"s", "s", false}, {"n", "n", false},
        {"m", "m", false},   {"ll", "ʎ", false}, {"a", "a", true},
        {"e", "e", true},    {"i", "i", true},  {"o", "o", true}}},
      {"ky",
       {{"к", "k", false}, {"т", "t", false}, {"с", "s", false},
        {"н", "n", false}, {"м", "m", false}, {"ш", "ʃ", false},
        {"ң", "ŋ", false}, {"л", "l", false}, {"а", "a", true},
        {"е", "e", true},  {"ы", "ɯ", true},  {"ө", "ø", true}}},
      {"tt",
       {{"к", "k", false}, {"т", "t", false}, {"с", "s", false},
        {"н", "n", false}, {"м", "m", false}, {"ш", "ʃ", false},
        {"ң", "ŋ", false}, {"җ", "ʑ", false}, {"ә", "æ", true},
        {"а", "ɑ", true},  {"ы", "ɤ", true},  {"ү", "y", true}}},
  };
  return kLanguages;
}

Alphabet ToyAlphabet() {
  std::set<std::string> symbols;
  for (const auto& lang : ToyLanguages()) {
    for (const auto& u : lang.units) symbols.insert(u.phoneme);
  }
  return Alphabet({symbols.begin(), symbols.end()});
}

ToyCorpus MakeToyCorpus(const ToyCorpusOptions& options, std::uint64_t seed,
                        const NoisyGridOptions& grid_options) {
  if (options.lexicon_size == 0 || options.max_words == 0) {
    throw InvalidArgument("toy corpus needs a lexicon and at least one word");
  }
  const Alphabet alphabet = ToyAlphabet();
  ToyCorpus corpus;

  for (const auto& lang : ToyLanguages()) {
    auto it = options.utterances.find(lang.code);
    if (it == options.utterances.end() || it->second == 0) continue;

    std::vector<const SpellingUnit*> vowels, consonants;
    for (const auto& u : lang.units) {
      (u.vowel ? vowels : consonants).push_back(&u);
    }

    struct Word {
      std::string text;
      std::vector<std::string> phonemes;
    };
    Rng lex_rng = Rng::ForStream(seed, "lexicon:" + lang.code);
    std::vector<Word> lexicon;
    std::set<std::string> seen;
    while (lexicon.size() < options.lexicon_size) {
      Word w;
      const std::size_t syllables = 1 + lex_rng.Below(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        const auto* c = consonants[lex_rng.Below(consonants.size())];
        const auto* v = vowels[lex_rng.Below(vowels.size())];
        w.text += c->grapheme + v->grapheme;
        w.phonemes.push_back(c->phoneme);
        w.phonemes.push_back(v->phoneme);
      }
      if (seen.insert(w.text).second) lexicon.push_back(std::move(w));
    }

    Rng rng = Rng::ForStream(seed, "utterances:" + lang.code);
    const std::size_t n = it->second;
    const auto n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * options.test_fraction));
    for (std::size_t i = 0; i < n; ++i) {
      UtteranceRecord r;
      r.id = PaddedId(lang.code, i);
      r.lang = lang.code;
      const std::size_t words = 1 + rng.Below(options.max_words);
      for (std::size_t w = 0; w < words; ++w) {
        const Word& word = lexicon[rng.Below(lexicon.size())];
        if (w > 0) r.text += ' ';
        r.text += word.text;
        r.phonemes.insert(r.phonemes.end(), word.phonemes.begin(),
                          word.phonemes.end());
      }
      r.dur_sec = 0.5 + 0.08 * static_cast<double>(r.phonemes.size());
      auto grid = NoisyReferenceGrid(r.id, alphabet, r.phonemes, rng,
                                     grid_options);
      const bool test = i < n_test;
      (test ? corpus.test : corpus.train).records.push_back(std::move(r));
      (test ? corpus.test_grids : corpus.train_grids)
          .push_back(std::move(grid));
    }
  }
  return corpus;
}

CorpusManifest HoursManifest(const std::map<std::string, double>& hours,
                             double min_dur, double max_dur,
                             std::uint64_t seed) {
  if (!(min_dur > 0.0) || max_dur < min_dur) {
    throw InvalidArgument("need 0 < min_dur <= max_dur");
  }
  CorpusManifest manifest;
  for (const auto& [lang, h] : hours) {
    Rng rng = Rng::ForStream(seed, "hours:" + lang);
    double remaining = h * 3600.0;
    std::size_t n = 0;
    while (remaining > 0.0) {
      double dur = min_dur + (max_dur - min_dur) * rng.Uniform();
      if (remaining <= max_dur) dur = remaining;
      UtteranceRecord r;
      r.id = PaddedId(lang, n++);
      r.lang = lang;
      r.dur_sec = dur;
      r.phonemes = {"a"};
      r.text = "a";
      manifest.records.push_back(std::move(r));
      remaining -= dur;
    }
  }
  return manifest;
}

const std::map<std::string, double>& BenchmarkTrainingHours() {
  static const std::map<std::string, double> kHours = {
      {"en", 2227.3}, {"es", 382.3}, {"fr", 823.4}, {"it", 271.5},
      {"ky", 32.7},   {"nl", 70.2},  {"ru", 149.8}, {"sv", 29.8},
      {"tr", 61.5},   {"tt", 20.8},
  };
  return kHours;
}

}  // namespace p2g
