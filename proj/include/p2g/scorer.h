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

#ifndef P2G_SCORER_H_
#define P2G_SCORER_H_

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "p2g/ctc.h"

namespace p2g {

// Output of the P2G stage: a language tag followed by UTF-8 text. The text
// is scored one code point at a time.
struct TargetText {
  std::string lid;
  std::string text;

  auto operator<=>(const TargetText&) const = default;
};

struct ScoredText {
  TargetText text;
  double log_prob = 0.0;
};

// Ordering for generated candidates: log-prob desc, then (lid, text) asc.
bool ScoredTextBefore(const ScoredText& a, const ScoredText& b);

// p(<lid> y_1 .. y_L </s> | h), factorized left to right with the language
// tag as the first generated unit. Implementations are immutable and safe to
// share across threads.
class ConditionalScorer {
 public:
  virtual ~ConditionalScorer() = default;

  // Phoneme labels in `h` refer to alphabet().
  virtual const Alphabet& alphabet() const = 0;
  virtual const std::vector<std::string>& languages() const = 0;

  virtual double LogScore(const TargetText& y,
                          const PhonemeSequence& h) const = 0;

  // At most s complete candidates of at most max_len code points, ordered by
  // ScoredTextBefore. Each log_prob equals LogScore of that candidate.
  virtual std::vector<ScoredText> GenerateTopS(const PhonemeSequence& h,
                                               std::size_t s,
                                               std::size_t max_len) const = 0;

  // Most probable first unit; ties go to the smaller language code.
  virtual std::string PredictLid(const PhonemeSequence& h) const = 0;
};

struct NGramOptions {
  int order = 3;        // context = order - 1 previous output units
  int window = 1;       // aligned phoneme context is +-window positions
  double alpha = 0.1;   // additive smoothing constant
  // Language inventory. Empty means: every lid seen in training.
  std::vector<std::string> languages;
};

struct TrainingPair {
  PhonemeSequence phonemes;
  TargetText text;
};

// Character n-gram scorer conditioned on a window of phonemes at a fixed
// monotone alignment: the character at index i (and the </s> after the last
// one, at i = length) reads phonemes around round(i * ratio), where ratio is
// the phonemes-per-character rate measured on the training data. The
// language tag reads position 0.
//
// Output units: "</s>" (0), "<unk>" (1), one "<lid:xx>" per language, then
// every character seen in training. Characters outside the inventory score
// as <unk>.
class NGramScorer : public ConditionalScorer {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr std::int32_t kEos = 0;
  static constexpr std::int32_t kUnk = 1;

  // Throws InvalidArgument on an empty training set, bad options or a lid
  // outside options.languages.
  static NGramScorer Train(const Alphabet& alphabet,
                           std::span<const TrainingPair> pairs,
                           const NGramOptions& options = {});

  const Alphabet& alphabet() const override { return alphabet_; }
  const std::vector<std::string>& languages() const override {
    return languages_;
  }
  const std::vector<std::string>& characters() const { return characters_; }
  int order() const { return order_; }
  int window() const { return window_; }
  double alpha() const { return alpha_; }
  double ratio() const { return ratio_; }

  double LogScore(const TargetText& y,
                  const PhonemeSequence& h) const override;
  std::vector<ScoredText> GenerateTopS(const PhonemeSequence& h,
                                       std::size_t s,
                                       std::size_t max_len) const override;
  std::string PredictLid(const PhonemeSequence& h) const override;

  // Log-probabilities of each language tag as the first unit, indexed like
  // languages().
  std::vector<double> LidLogProbs(const PhonemeSequence& h) const;

  // Log-probabilities over the next character unit given the language and the
  // characters generated so far. Index 0 is </s>, 1 is <unk>, 2 + j is
  // characters()[j].
  std::vector<double> NextUnitLogProbs(const PhonemeSequence& h,
                                       const std::string& lid,
                                       std::span<const std::string> prefix)
      const;

  // Versioned JSON dump of configuration and counts.
  std::string ToJson() const;
  static NGramScorer FromJson(const std::string& json);

 private:
  struct Counts {
    std::map<std::int32_t, std::uint64_t> by_unit;
    std::uint64_t total = 0;
  };
  using Table = std::map<std::vector<std::int32_t>, Counts>;

  NGramScorer() = default;

  std::int32_t LidUnit(const std::string& lid) const;
  std::int32_t CharUnit(const std::string& ch) const;
  std::int32_t NumCharOutcomes() const;

  // Context key for output position `position` with `history` the units
  // emitted so far (language tag first).
  std::vector<std::int32_t> ContextKey(const PhonemeSequence& h,
                                       std::size_t position,
                                       std::span<const std::int32_t> history)
      const;
  double StepLogProb(const std::vector<std::int32_t>& key, std::int32_t unit,
                     std::int32_t num_outcomes) const;

  Alphabet alphabet_;
  std::vector<std::string> languages_;
  std::vector<std::string> characters_;
  std::map<std::string, std::int32_t> char_index_;
  int order_ = 3;
  int window_ = 1;
  double alpha_ = 0.1;
  double ratio_ = 1.0;
  Table table_;
};

}  // namespace p2g

#endif  // P2G_SCORER_H_
