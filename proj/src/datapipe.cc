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

#include "p2g/datapipe.h"

#include <algorithm>
#include <cmath>

#include "p2g/common.h"
#include "p2g/rng.h"

namespace p2g {

namespace {

constexpr std::string_view kIpaTag = "<ipa> ";
constexpr std::string_view kSeparator = " | ";
constexpr std::string_view kLidOpen = "<lid:";

// ASCII whitespace is enough here: tokens only need to survive a split on
// the single spaces the serializer inserts, plus line framing.
bool HasSpace(std::string_view s) {
  return s.find_first_of(" \t\n\r\v\f") != std::string_view::npos;
}

void CheckPhonemeToken(std::string_view token) {
  if (token.empty() || HasSpace(token) ||
      token.find('|') != std::string_view::npos) {
    throw InvalidInput("invalid phoneme token '" + std::string(token) +
                       "' (empty, whitespace or '|')");
  }
}

void CheckLid(std::string_view lid) {
  if (lid.empty() || HasSpace(lid) || lid.find('>') != std::string_view::npos) {
    throw InvalidInput("invalid language code '" + std::string(lid) + "'");
  }
}

}  // namespace

std::map<std::string, double> CorpusManifest::LanguageHours() const {
  std::map<std::string, double> seconds;
  for (const auto& r : records) seconds[r.lang] += r.dur_sec;
  for (auto& [lang, s] : seconds) s /= 3600.0;
  return seconds;
}

void ValidateRecord(const UtteranceRecord& record) {
  if (record.id.empty()) throw InvalidInput("record with empty id");
  if (record.lang.empty()) {
    throw InvalidInput("record '" + record.id + "' has no language");
  }
  if (!(record.dur_sec > 0.0) || !std::isfinite(record.dur_sec)) {
    throw InvalidInput("record '" + record.id +
                       "' must have a positive finite duration");
  }
}

std::string SerializeTrainingLine(std::span<const std::string> phonemes,
                                  const TargetText& text) {
  CheckLid(text.lid);
  if (text.text.find_first_of("\n\r") != std::string::npos) {
    throw InvalidInput("training text may not contain line breaks");
  }
  std::string line(kIpaTag);
  for (std::size_t i = 0; i < phonemes.size(); ++i) {
    CheckPhonemeToken(phonemes[i]);
    if (i > 0) line += ' ';
    line += phonemes[i];
  }
  line += kSeparator;
  line += kLidOpen;
  line += text.lid;
  line += "> ";
  line += text.text;
  return line;
}

TrainingLine ParseTrainingLine(std::string_view line) {
  auto fail = [&](const char* why) {
    return InvalidInput(std::string("malformed training line (") + why +
                        "): " + std::string(line.substr(0, 80)));
  };
  if (!line.starts_with(kIpaTag)) throw fail("missing <ipa> tag");
  line.remove_prefix(kIpaTag.size());

  // Phoneme tokens cannot hold '|', so the first " | " ends the input side.
  const auto sep = line.find(kSeparator);
  if (sep == std::string_view::npos) throw fail("missing ' | '");
  TrainingLine out;
  std::string_view phones = line.substr(0, sep);
  while (!phones.empty()) {
    const auto space = phones.find(' ');
    const auto token = phones.substr(0, space);
    CheckPhonemeToken(token);
    out.phonemes.emplace_back(token);
    if (space == std::string_view::npos) break;
    phones.remove_prefix(space + 1);
    if (phones.empty()) throw fail("trailing space after phonemes");
  }

  std::string_view rest = line.substr(sep + kSeparator.size());
  if (!rest.starts_with(kLidOpen)) throw fail("missing <lid:..> tag");
  rest.remove_prefix(kLidOpen.size());
  const auto close = rest.find("> ");
  if (close == std::string_view::npos) throw fail("unterminated <lid:..> tag");
  out.text.lid = std::string(rest.substr(0, close));
  CheckLid(out.text.lid);
  out.text.text = std::string(rest.substr(close + 2));
  if (out.text.text.find_first_of("\n\r") != std::string::npos) {
    throw fail("line break in text");
  }
  return out;
}

std::vector<TrainingLine> GenerateDanp(const PosteriorGrid& grid,
                                       const UtteranceRecord& record,
                                       const DanpOptions& options) {
  if (options.n_best == 0) throw InvalidArgument("n_best must be >= 1");
  const auto hyps = PrefixBeamSearch(
      grid, std::max(options.beam_width, options.n_best), options.n_best);
  std::vector<TrainingLine> out;
  out.reserve(hyps.size() + 1);
  for (const auto& hyp : hyps) {
    TrainingLine pair;
    pair.text = record.Target();
    for (Label l : hyp.sequence.tokens) {
      pair.phonemes.push_back(grid.alphabet().SymbolOf(l));
    }
    out.push_back(std::move(pair));
  }
  if (options.include_clean) {
    out.push_back({record.phonemes, record.Target()});
  }
  return out;
}

CorpusManifest OversampleManifest(const CorpusManifest& manifest,
                                  double target_hours, std::uint64_t seed,
                                  const std::set<std::string>& required) {
  if (!(target_hours > 0.0) || !std::isfinite(target_hours)) {
    throw InvalidArgument("target hours must be positive");
  }
  std::map<std::string, std::vector<std::size_t>> by_lang;
  std::map<std::string, double> seconds;
  for (std::size_t i = 0; i < manifest.records.size(); ++i) {
    const auto& r = manifest.records[i];
    ValidateRecord(r);
    by_lang[r.lang].push_back(i);
    seconds[r.lang] += r.dur_sec;
  }
  for (const auto& lang : required) {
    if (!by_lang.contains(lang)) {
      throw InvalidArgument("language '" + lang +
                            "' has no records to oversample");
    }
  }

  const double target_sec = target_hours * 3600.0;
  CorpusManifest out = manifest;
  std::map<std::size_t, std::uint32_t> copies;
  for (const auto& [lang, indices] : by_lang) {
    double cumulative = seconds[lang];
    if (cumulative >= target_sec) continue;
    Rng rng = Rng::ForStream(seed, "oversample:" + lang);
    while (cumulative < target_sec) {
      const std::size_t src = indices[rng.Below(indices.size())];
      UtteranceRecord copy = manifest.records[src];
      copy.repetition = ++copies[src];
      cumulative += copy.dur_sec;
      out.records.push_back(std::move(copy));
    }
  }
  return out;
}

std::map<std::string, LanguageStats> ManifestStats(
    const CorpusManifest& manifest) {
  std::map<std::string, LanguageStats> stats;
  std::map<std::string, std::pair<double, double>> seconds;
  for (const auto& r : manifest.records) {
    auto& s = stats[r.lang];
    auto& [orig, eff] = seconds[r.lang];
    ++s.records;
    eff += r.dur_sec;
    if (r.repetition == 0) {
      ++s.original_records;
      orig += r.dur_sec;
    }
  }
  for (auto& [lang, s] : stats) {
    s.original_hours = seconds[lang].first / 3600.0;
    s.effective_hours = seconds[lang].second / 3600.0;
    s.repetition_factor = s.original_hours > 0.0
                              ? s.effective_hours / s.original_hours
                              : 0.0;
  }
  return stats;
}

}  // namespace p2g
