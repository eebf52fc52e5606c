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

// Seeded generators for posterior grids and corpora. Grids here stand in for
// the output of an upstream speech-to-phoneme model.

#ifndef P2G_SYNTHETIC_H_
#define P2G_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "p2g/ctc.h"
#include "p2g/datapipe.h"
#include "p2g/rng.h"

namespace p2g {

// Alphabet "p1" .. "pV".
Alphabet NumberedAlphabet(std::size_t symbols);

// T x (V+1) grid with each row drawn uniformly from the simplex and raised
// to `sharpness` (larger is peakier). Every entry is strictly positive.
PosteriorGrid RandomGrid(const std::string& id, const Alphabet& alphabet,
                         std::size_t frames, Rng& rng, double sharpness = 1.0);

struct NoisyGridOptions {
  std::size_t frames_per_token = 2;
  double min_peak = 0.6;     // probability of the reference label per frame
  double max_peak = 0.95;
  double blank_floor = 0.02; // blank mass on token frames
};

// Grid that emits `reference` with a blank frame between tokens, spreading
// 1 - peak over random competitors.
PosteriorGrid NoisyReferenceGrid(const std::string& id,
                                 const Alphabet& alphabet,
                                 const std::vector<std::string>& reference,
                                 Rng& rng, const NoisyGridOptions& options = {});

// One grapheme-to-phoneme unit of a toy orthography.
struct SpellingUnit {
  std::string grapheme;
  std::string phoneme;
  bool vowel = false;
};

struct ToyLanguage {
  std::string code;
  std::vector<SpellingUnit> units;
};

// Four toy orthographies (en, es in Latin script; ky, tt in Cyrillic) sharing
// part of their phoneme inventory.
const std::vector<ToyLanguage>& ToyLanguages();

// Sorted union of the toy phoneme inventories.
Alphabet ToyAlphabet();

struct ToyCorpusOptions {
  std::map<std::string, std::size_t> utterances;  // per language code
  std::size_t lexicon_size = 24;
  std::size_t max_words = 2;
  double test_fraction = 0.2;
};

struct ToyCorpus {
  CorpusManifest train;
  CorpusManifest test;
  std::vector<PosteriorGrid> train_grids;
  std::vector<PosteriorGrid> test_grids;
};

ToyCorpus MakeToyCorpus(const ToyCorpusOptions& options, std::uint64_t seed,
                        const NoisyGridOptions& grid_options = {});

// Manifest whose per-language hours equal `hours` (up to float rounding),
// built from utterances with durations uniform in [min_dur, max_dur] seconds
// and a shorter final utterance absorbing the remainder.
CorpusManifest HoursManifest(const std::map<std::string, double>& hours,
                             double min_dur, double max_dur,
                             std::uint64_t seed);

// Training hours per language of the ten-language benchmark the balancing
// defaults were tuned on.
const std::map<std::string, double>& BenchmarkTrainingHours();

}  // namespace p2g

#endif  // P2G_SYNTHETIC_H_
