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

#ifndef P2G_DATAPIPE_H_
#define P2G_DATAPIPE_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "p2g/ctc.h"
#include "p2g/scorer.h"

namespace p2g {

struct UtteranceRecord {
  std::string id;
  std::string lang;
  double dur_sec = 0.0;
  std::vector<std::string> phonemes;
  std::string text;
  // 0 for an original record, n for the n-th oversampled copy of it.
  std::uint32_t repetition = 0;

  TargetText Target() const { return {lang, text}; }
  bool operator==(const UtteranceRecord&) const = default;
};

struct CorpusManifest {
  std::vector<UtteranceRecord> records;

  // lang -> sum(dur_sec) / 3600 over all records, copies included.
  std::map<std::string, double> LanguageHours() const;
};

// Throws InvalidInput when a record breaks dur_sec > 0 or has an empty id or
// language.
void ValidateRecord(const UtteranceRecord& record);

// "<ipa> p1 p2 ... | <lid:xx> text". Throws InvalidInput when a phoneme token
// is empty or holds '|' or whitespace, when the language code is empty or
// holds '>' or whitespace, or when the text holds a line break.
std::string SerializeTrainingLine(std::span<const std::string> phonemes,
                                  const TargetText& text);

struct TrainingLine {
  std::vector<std::string> phonemes;
  TargetText text;
  bool operator==(const TrainingLine&) const = default;
};

// Exact inverse of SerializeTrainingLine. Throws InvalidInput.
TrainingLine ParseTrainingLine(std::string_view line);

struct DanpOptions {
  std::size_t n_best = 16;
  std::size_t beam_width = 16;  // raised to n_best when smaller
  // Also emit the reference phonemes as one extra pair after the n-best.
  bool include_clean = false;
};

// Noisy-input training pairs: the n-best phoneme hypotheses of `grid`, in
// beam rank order, each paired with the record's unchanged reference text.
std::vector<TrainingLine> GenerateDanp(const PosteriorGrid& grid,
                                       const UtteranceRecord& record,
                                       const DanpOptions& options = {});

// Raises every language below target_hours to at least target_hours by
// appending uniformly drawn copies of its records (with replacement) until
// the cumulative duration first reaches the target. Languages at or above
// the target are untouched. Originals keep their order; copies follow,
// grouped by language in code order. Each language samples from its own
// stream derived from (seed, language).
//
// Throws InvalidArgument when target_hours <= 0 or a language in `required`
// has no records.
CorpusManifest OversampleManifest(const CorpusManifest& manifest,
                                  double target_hours, std::uint64_t seed,
                                  const std::set<std::string>& required = {});

struct LanguageStats {
  double original_hours = 0.0;   // records with repetition == 0
  double effective_hours = 0.0;  // all records
  std::size_t original_records = 0;
  std::size_t records = 0;
  double repetition_factor = 0.0;  // effective / original hours
};

std::map<std::string, LanguageStats> ManifestStats(
    const CorpusManifest& manifest);

}  // namespace p2g

#endif  // P2G_DATAPIPE_H_
