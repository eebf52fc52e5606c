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

// CTC primitives over frame-level phoneme posteriors: the collapse mapping,
// exact forward scoring, ancestral path sampling and prefix beam search.
//
// Label indices: 0 is the blank, 1..V name Alphabet::symbols()[0..V-1].

#ifndef P2G_CTC_H_
#define P2G_CTC_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "p2g/rng.h"

namespace p2g {

using Label = std::int32_t;
inline constexpr Label kBlank = 0;

class Alphabet {
 public:
  Alphabet() = default;
  // Throws InvalidInput on duplicate or empty symbols.
  explicit Alphabet(std::vector<std::string> symbols);

  const std::vector<std::string>& symbols() const { return symbols_; }
  // Number of phoneme symbols V, excluding blank.
  std::size_t size() const { return symbols_.size(); }
  // V + 1 columns in a posterior grid.
  std::size_t num_labels() const { return symbols_.size() + 1; }

  // Label for a symbol, or -1 when absent.
  Label Find(const std::string& symbol) const;
  // Throws InvalidInput when absent.
  Label LabelOf(const std::string& symbol) const;
  // Throws InvalidInput for the blank or out-of-range labels.
  const std::string& SymbolOf(Label label) const;

  bool operator==(const Alphabet& other) const {
    return symbols_ == other.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> index_;
};

// Collapsed phoneme sequence h = B(pi). Never contains the blank.
struct PhonemeSequence {
  std::vector<Label> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  auto operator<=>(const PhonemeSequence&) const = default;
};

// One label per frame; blanks allowed.
struct FramePath {
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  auto operator<=>(const FramePath&) const = default;
};

struct ScoredHypothesis {
  PhonemeSequence sequence;
  double log_score = 0.0;
};

// Ranking used for beam output: score desc, then shorter, then
// lexicographically smaller label indices.
bool RanksBefore(const ScoredHypothesis& a, const ScoredHypothesis& b);

// T x (V+1) natural-log posteriors, column 0 = blank. Immutable.
class PosteriorGrid {
 public:
  // Row-normalization tolerance applied at construction.
  static constexpr double kRowTolerance = 1e-6;

  PosteriorGrid() = default;

  // Validates shape, sign and normalization of every row. With renormalize
  // set, rows are shifted by their log-sum-exp instead of being rejected.
  PosteriorGrid(std::string utterance_id, Alphabet alphabet,
                const std::vector<std::vector<double>>& rows,
                bool renormalize = false);

  const std::string& utterance_id() const { return utterance_id_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t frames() const { return frames_; }
  std::size_t num_labels() const { return alphabet_.num_labels(); }

  double logp(std::size_t t, Label label) const {
    return logp_[t * num_labels() + static_cast<std::size_t>(label)];
  }
  std::span<const double> row(std::size_t t) const {
    return {logp_.data() + t * num_labels(), num_labels()};
  }
  std::vector<std::vector<double>> Rows() const;

  // Re-expresses the grid in a superset alphabet. Columns for symbols the
  // grid lacks are log-zero. Throws InvalidInput when the grid has a
  // symbol the target alphabet does not.
  PosteriorGrid RemapTo(const Alphabet& target) const;

 private:
  std::string utterance_id_;
  Alphabet alphabet_;
  std::size_t frames_ = 0;
  std::vector<double> logp_;
};

// Checks every label is in range for `num_labels` columns.
void ValidatePath(const FramePath& path, std::size_t num_labels);

// B(path): merge runs of equal adjacent non-blank labels, then drop blanks.
// `num_labels` bounds the valid index range (V + 1).
PhonemeSequence Collapse(const FramePath& path, std::size_t num_labels);

// log sum over all paths pi with B(pi) = h of prod_t p(pi_t | t).
// Returns kLogZero when h cannot be emitted in grid.frames() frames.
double ForwardLogProb(const PosteriorGrid& grid, const PhonemeSequence& h);

// Draws one label per frame from that frame's distribution, sharpened or
// flattened by `temperature` (1.0 samples the raw posterior).
FramePath SamplePath(const PosteriorGrid& grid, Rng& rng,
                     double temperature = 1.0);

// k raw draws of Collapse(SamplePath(...)); duplicates kept.
std::vector<PhonemeSequence> SampleHypotheses(const PosteriorGrid& grid,
                                              std::size_t k, Rng& rng,
                                              double temperature = 1.0);

// CTC prefix beam search. Prefixes are merged across paths, tracking
// blank-ending and label-ending mass separately. Returns up to k distinct
// sequences ranked by RanksBefore. Throws InvalidArgument unless
// beam_width >= k >= 1.
std::vector<ScoredHypothesis> PrefixBeamSearch(const PosteriorGrid& grid,
                                               std::size_t beam_width,
                                               std::size_t k);

}  // namespace p2g

#endif  // P2G_CTC_H_
