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

#include "p2g/scorer.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "p2g/common.h"

namespace p2g {

namespace {

constexpr std::int32_t kBos = -1;
constexpr std::int32_t kPad = 0;
constexpr std::int32_t kLidStep = 0;
constexpr std::int32_t kCharStep = 1;
constexpr const char* kFormatName = "p2g-ngram-scorer";

}  // namespace

bool ScoredTextBefore(const ScoredText& a, const ScoredText& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.text < b.text;
}

NGramScorer NGramScorer::Train(const Alphabet& alphabet,
                               std::span<const TrainingPair> pairs,
                               const NGramOptions& options) {
  if (pairs.empty()) throw InvalidArgument("empty scorer training set");
  if (options.order < 1) throw InvalidArgument("n-gram order must be >= 1");
  if (options.window < 0) throw InvalidArgument("window must be >= 0");
  if (!(options.alpha > 0.0)) {
    throw InvalidArgument("smoothing alpha must be positive");
  }

  NGramScorer scorer;
  scorer.alphabet_ = alphabet;
  scorer.order_ = options.order;
  scorer.window_ = options.window;
  scorer.alpha_ = options.alpha;

  std::set<std::string> lids(options.languages.begin(),
                             options.languages.end());
  std::set<std::string> chars;
  std::vector<std::vector<std::string>> units(pairs.size());
  std::uint64_t phoneme_total = 0;
  std::uint64_t char_total = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& pair = pairs[i];
    if (pair.text.lid.empty()) throw InvalidArgument("empty language code");
    if (options.languages.empty()) {
      lids.insert(pair.text.lid);
    } else if (!lids.contains(pair.text.lid)) {
      throw InvalidArgument("language '" + pair.text.lid +
                            "' is not in the configured inventory");
    }
    for (Label l : pair.phonemes.tokens) {
      if (l <= kBlank || static_cast<std::size_t>(l) > alphabet.size()) {
        throw InvalidArgument("training phoneme label out of range");
      }
    }
    units[i] = SplitCodePoints(pair.text.text);
    chars.insert(units[i].begin(), units[i].end());
    phoneme_total += pair.phonemes.size();
    char_total += units[i].size();
  }
  scorer.languages_.assign(lids.begin(), lids.end());
  scorer.characters_.assign(chars.begin(), chars.end());
  for (std::size_t j = 0; j < scorer.characters_.size(); ++j) {
    scorer.char_index_[scorer.characters_[j]] =
        static_cast<std::int32_t>(j);
  }
  scorer.ratio_ =
      char_total == 0 ? 1.0
                      : static_cast<double>(phoneme_total) /
                            static_cast<double>(char_total);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& h = pairs[i].phonemes;
    std::vector<std::int32_t> history;
    auto count = [&](std::size_t position, std::int32_t unit) {
      auto& counts = scorer.table_[scorer.ContextKey(h, position, history)];
      ++counts.by_unit[unit];
      ++counts.total;
      history.push_back(unit);
    };
    count(0, scorer.LidUnit(pairs[i].text.lid));
    for (std::size_t c = 0; c < units[i].size(); ++c) {
      count(c, scorer.CharUnit(units[i][c]));
    }
    count(units[i].size(), kEos);
  }
  return scorer;
}

std::int32_t NGramScorer::LidUnit(const std::string& lid) const {
  auto it = std::lower_bound(languages_.begin(), languages_.end(), lid);
  if (it == languages_.end() || *it != lid) {
    throw InvalidInput("language '" + lid + "' is not known to the scorer");
  }
  return 2 + static_cast<std::int32_t>(it - languages_.begin());
}

std::int32_t NGramScorer::CharUnit(const std::string& ch) const {
  auto it = char_index_.find(ch);
  if (it == char_index_.end()) return kUnk;
  return 2 + static_cast<std::int32_t>(languages_.size()) + it->second;
}

std::int32_t NGramScorer::NumCharOutcomes() const {
  return 2 + static_cast<std::int32_t>(characters_.size());
}

std::vector<std::int32_t> NGramScorer::ContextKey(
    const PhonemeSequence& h, std::size_t position,
    std::span<const std::int32_t> history) const {
  std::vector<std::int32_t> key;
  key.reserve(1 + 2 * window_ + 1 + order_);
  key.push_back(history.empty() ? kLidStep : kCharStep);

  const auto n = static_cast<std::int64_t>(h.size());
  auto center = static_cast<std::int64_t>(
      std::floor(static_cast<double>(position) * ratio_ + 0.5));
  center = std::min(center, n);
  for (std::int64_t d = -window_; d <= window_; ++d) {
    const std::int64_t p = center + d;
    key.push_back(p >= 0 && p < n ? h.tokens[static_cast<std::size_t>(p)]
                                  : kPad);
  }

  const auto context = static_cast<std::size_t>(order_ - 1);
  for (std::size_t i = 0; i < context; ++i) {
    // Oldest first; positions before the start are BOS.
    const std::size_t back = context - i;
    key.push_back(back <= history.size() ? history[history.size() - back]
                                         : kBos);
  }
  return key;
}

double NGramScorer::StepLogProb(const std::vector<std::int32_t>& key,
                                std::int32_t unit,
                                std::int32_t num_outcomes) const {
  std::uint64_t seen = 0;
  std::uint64_t total = 0;
  if (auto it = table_.find(key); it != table_.end()) {
    total = it->second.total;
    if (auto u = it->second.by_unit.find(unit); u != it->second.by_unit.end()) {
      seen = u->second;
    }
  }
  return std::log((static_cast<double>(seen) + alpha_) /
                  (static_cast<double>(total) + alpha_ * num_outcomes));
}

double NGramScorer::LogScore(const TargetText& y,
                             const PhonemeSequence& h) const {
  const auto units = SplitCodePoints(y.text);
  std::vector<std::int32_t> history;
  const std::int32_t lid = LidUnit(y.lid);
  double total = StepLogProb(ContextKey(h, 0, history), lid,
                             static_cast<std::int32_t>(languages_.size()));
  history.push_back(lid);
  for (std::size_t c = 0; c <= units.size(); ++c) {
    const std::int32_t unit = c < units.size() ? CharUnit(units[c]) : kEos;
    total += StepLogProb(ContextKey(h, c, history), unit, NumCharOutcomes());
    history.push_back(unit);
  }
  return total;
}

std::vector<double> NGramScorer::LidLogProbs(const PhonemeSequence& h) const {
  const auto key = ContextKey(h, 0, {});
  std::vector<double> out(languages_.size());
  for (std::size_t j = 0; j < languages_.size(); ++j) {
    out[j] = StepLogProb(key, 2 + static_cast<std::int32_t>(j),
                         static_cast<std::int32_t>(languages_.size()));
  }
  return out;
}

std::vector<double> NGramScorer::NextUnitLogProbs(
    const PhonemeSequence& h, const std::string& lid,
    std::span<const std::string> prefix) const {
  std::vector<std::int32_t> history{LidUnit(lid)};
  for (const auto& ch : prefix) history.push_back(CharUnit(ch));
  const auto key = ContextKey(h, prefix.size(), history);
  const std::int32_t n = NumCharOutcomes();
  std::vector<double> out(static_cast<std::size_t>(n));
  out[0] = StepLogProb(key, kEos, n);
  out[1] = StepLogProb(key, kUnk, n);
  const auto base = 2 + static_cast<std::int32_t>(languages_.size());
  for (std::int32_t j = 0; j + 2 < n; ++j) {
    out[static_cast<std::size_t>(j) + 2] = StepLogProb(key, base + j, n);
  }
  return out;
}

std::string NGramScorer::PredictLid(const PhonemeSequence& h) const {
  const auto scores = LidLogProbs(h);
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return languages_[best];
}

std::vector<ScoredText> NGramScorer::GenerateTopS(const PhonemeSequence& h,
                                                  std::size_t s,
                                                  std::size_t max_len) const {
  if (s == 0) throw InvalidArgument("candidate count s must be >= 1");

  struct Partial {
    std::vector<std::int32_t> history;
    std::size_t length = 0;
    ScoredText scored;
  };

  const auto lid_key = ContextKey(h, 0, {});
  std::vector<Partial> live;
  for (std::size_t j = 0; j < languages_.size(); ++j) {
    const auto unit = 2 + static_cast<std::int32_t>(j);
    Partial p;
    p.history = {unit};
    p.scored = {{languages_[j], ""},
                StepLogProb(lid_key, unit,
                            static_cast<std::int32_t>(languages_.size()))};
    live.push_back(std::move(p));
  }

  auto prune = [s](auto& hyps, auto key) {
    std::sort(hyps.begin(), hyps.end(), [&](const auto& a, const auto& b) {
      return ScoredTextBefore(key(a), key(b));
    });
    if (hyps.size() > s) hyps.resize(s);
  };
  auto partial_key = [](const Partial& p) -> const ScoredText& {
    return p.scored;
  };
  auto done_key = [](const ScoredText& t) -> const ScoredText& { return t; };
  prune(live, partial_key);

  const std::int32_t n = NumCharOutcomes();
  const auto base = 2 + static_cast<std::int32_t>(languages_.size());
  std::vector<ScoredText> done;
  while (!live.empty()) {
    // Every extension lowers the score, so nothing live can displace a full
    // set of s finished candidates once it falls to or below the worst one.
    if (done.size() >= s && live.front().scored.log_prob <= done.back().log_prob) {
      break;
    }
    std::vector<Partial> next;
    for (const auto& p : live) {
      const auto key = ContextKey(h, p.length, p.history);
      ScoredText finished = p.scored;
      finished.log_prob += StepLogProb(key, kEos, n);
      done.push_back(std::move(finished));
      if (p.length == max_len) continue;
      for (std::int32_t j = 0; j + 2 < n; ++j) {
        Partial q = p;
        q.history.push_back(base + j);
        q.length += 1;
        q.scored.text.text += characters_[static_cast<std::size_t>(j)];
        q.scored.log_prob += StepLogProb(key, base + j, n);
        next.push_back(std::move(q));
      }
    }
    prune(done, done_key);
    prune(next, partial_key);
    live = std::move(next);
  }
  return done;
}

std::string NGramScorer::ToJson() const {
  nlohmann::json j;
  j["format"] = kFormatName;
  j["version"] = kFormatVersion;
  j["order"] = order_;
  j["window"] = window_;
  j["alpha"] = alpha_;
  j["ratio"] = ratio_;
  j["phonemes"] = alphabet_.symbols();
  j["languages"] = languages_;
  j["characters"] = characters_;
  auto tables = nlohmann::json::array();
  for (const auto& [key, counts] : table_) {
    auto entries = nlohmann::json::array();
    for (const auto& [unit, c] : counts.by_unit) {
      entries.push_back({unit, c});
    }
    tables.push_back({{"context", key}, {"counts", entries}});
  }
  j["tables"] = std::move(tables);
  return j.dump();
}

NGramScorer NGramScorer::FromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("scorer file is not valid JSON: ") +
                       e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormatName) {
      throw InvalidInput("not a p2g n-gram scorer file");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw InvalidInput("unsupported scorer file version " +
                         j.at("version").dump());
    }
    NGramScorer scorer;
    scorer.order_ = j.at("order").get<int>();
    scorer.window_ = j.at("window").get<int>();
    scorer.alpha_ = j.at("alpha").get<double>();
    scorer.ratio_ = j.at("ratio").get<double>();
    scorer.alphabet_ =
        Alphabet(j.at("phonemes").get<std::vector<std::string>>());
    scorer.languages_ = j.at("languages").get<std::vector<std::string>>();
    scorer.characters_ = j.at("characters").get<std::vector<std::string>>();
    if (scorer.order_ < 1 || scorer.window_ < 0 || !(scorer.alpha_ > 0.0) ||
        scorer.languages_.empty() ||
        !std::is_sorted(scorer.languages_.begin(), scorer.languages_.end())) {
      throw InvalidInput("scorer file has an invalid configuration");
    }
    for (std::size_t c = 0; c < scorer.characters_.size(); ++c) {
      scorer.char_index_[scorer.characters_[c]] =
          static_cast<std::int32_t>(c);
    }
    for (const auto& entry : j.at("tables")) {
      auto& counts = scorer.table_[entry.at("context")
                                       .get<std::vector<std::int32_t>>()];
      for (const auto& uc : entry.at("counts")) {
        const auto c = uc.at(1).get<std::uint64_t>();
        counts.by_unit[uc.at(0).get<std::int32_t>()] += c;
        counts.total += c;
      }
    }
    return scorer;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed scorer file: ") + e.what());
  }
}

}  // namespace p2g
