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

#include "p2g/ctc.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "p2g/common.h"

namespace p2g {

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw InvalidInput("empty phoneme symbol");
    auto [it, inserted] =
        index_.emplace(symbols_[i], static_cast<Label>(i + 1));
    if (!inserted) {
      throw InvalidInput("duplicate phoneme symbol '" + symbols_[i] + "'");
    }
  }
}

Label Alphabet::Find(const std::string& symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? -1 : it->second;
}

Label Alphabet::LabelOf(const std::string& symbol) const {
  Label label = Find(symbol);
  if (label < 0) throw InvalidInput("unknown phoneme symbol '" + symbol + "'");
  return label;
}

const std::string& Alphabet::SymbolOf(Label label) const {
  if (label <= 0 || static_cast<std::size_t>(label) > symbols_.size()) {
    throw InvalidInput("label " + std::to_string(label) +
                       " is not a phoneme symbol");
  }
  return symbols_[static_cast<std::size_t>(label) - 1];
}

bool RanksBefore(const ScoredHypothesis& a, const ScoredHypothesis& b) {
  if (a.log_score != b.log_score) return a.log_score > b.log_score;
  if (a.sequence.size() != b.sequence.size()) {
    return a.sequence.size() < b.sequence.size();
  }
  return a.sequence.tokens < b.sequence.tokens;
}

PosteriorGrid::PosteriorGrid(std::string utterance_id, Alphabet alphabet,
                             const std::vector<std::vector<double>>& rows,
                             bool renormalize)
    : utterance_id_(std::move(utterance_id)),
      alphabet_(std::move(alphabet)),
      frames_(rows.size()) {
  if (frames_ == 0) {
    throw InvalidInput("grid '" + utterance_id_ + "' has no frames");
  }
  const std::size_t width = alphabet_.num_labels();
  logp_.reserve(frames_ * width);
  for (std::size_t t = 0; t < frames_; ++t) {
    const auto& row = rows[t];
    if (row.size() != width) {
      throw InvalidInput("grid '" + utterance_id_ + "' frame " +
                         std::to_string(t) + " has " +
                         std::to_string(row.size()) + " columns, expected " +
                         std::to_string(width));
    }
    for (double v : row) {
      if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
        throw InvalidInput("grid '" + utterance_id_ + "' frame " +
                           std::to_string(t) + " has a non-finite entry");
      }
    }
    const double norm = LogSumExpOf(row);
    if (IsLogZero(norm)) {
      throw InvalidInput("grid '" + utterance_id_ + "' frame " +
                         std::to_string(t) + " has no probability mass");
    }
    if (renormalize) {
      for (double v : row) logp_.push_back(v - norm);
      continue;
    }
    if (std::abs(norm) > kRowTolerance) {
      throw InvalidInput("grid '" + utterance_id_ + "' frame " +
                         std::to_string(t) +
                         " is not normalized (logsumexp = " +
                         std::to_string(norm) + ")");
    }
    for (double v : row) {
      if (v > 0.0) {
        throw InvalidInput("grid '" + utterance_id_ + "' frame " +
                           std::to_string(t) + " has a positive log-prob");
      }
      logp_.push_back(v);
    }
  }
}

std::vector<std::vector<double>> PosteriorGrid::Rows() const {
  std::vector<std::vector<double>> rows;
  rows.reserve(frames_);
  for (std::size_t t = 0; t < frames_; ++t) {
    auto r = row(t);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

PosteriorGrid PosteriorGrid::RemapTo(const Alphabet& target) const {
  if (target == alphabet_) return *this;
  std::vector<Label> column_of(num_labels());
  column_of[0] = kBlank;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    column_of[i + 1] = target.LabelOf(alphabet_.symbols()[i]);
  }
  std::vector<std::vector<double>> rows(
      frames_, std::vector<double>(target.num_labels(), kLogZero));
  for (std::size_t t = 0; t < frames_; ++t) {
    for (std::size_t c = 0; c < num_labels(); ++c) {
      rows[t][static_cast<std::size_t>(column_of[c])] =
          logp(t, static_cast<Label>(c));
    }
  }
  return PosteriorGrid(utterance_id_, target, rows);
}

void ValidatePath(const FramePath& path, std::size_t num_labels) {
  for (std::size_t t = 0; t < path.size(); ++t) {
    const Label l = path.labels[t];
    if (l < 0 || static_cast<std::size_t>(l) >= num_labels) {
      throw InvalidInput("path label " + std::to_string(l) + " at frame " +
                         std::to_string(t) + " is outside [0, " +
                         std::to_string(num_labels) + ")");
    }
  }
}

PhonemeSequence Collapse(const FramePath& path, std::size_t num_labels) {
  ValidatePath(path, num_labels);
  PhonemeSequence out;
  Label prev = kBlank;
  for (Label l : path.labels) {
    if (l != kBlank && l != prev) out.tokens.push_back(l);
    prev = l;
  }
  return out;
}

double ForwardLogProb(const PosteriorGrid& grid, const PhonemeSequence& h) {
  const std::size_t T = grid.frames();
  for (Label l : h.tokens) {
    if (l <= kBlank || static_cast<std::size_t>(l) >= grid.num_labels()) {
      throw InvalidInput("phoneme label " + std::to_string(l) +
                         " out of range for grid '" + grid.utterance_id() +
                         "'");
    }
  }

  // Expanded sequence: blank, h1, blank, h2, ..., hL, blank.
  const std::size_t S = 2 * h.size() + 1;
  auto label_at = [&](std::size_t s) {
    return s % 2 == 0 ? kBlank : h.tokens[s / 2];
  };

  std::vector<double> alpha(S, kLogZero);
  std::vector<double> next(S, kLogZero);
  alpha[0] = grid.logp(0, kBlank);
  if (S > 1) alpha[1] = grid.logp(0, label_at(1));

  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double acc = alpha[s];
      if (s >= 1) acc = LogAdd(acc, alpha[s - 1]);
      // Skip over a blank only between distinct labels.
      if (s >= 2 && s % 2 == 1 && label_at(s) != label_at(s - 2)) {
        acc = LogAdd(acc, alpha[s - 2]);
      }
      next[s] = IsLogZero(acc) ? kLogZero : acc + grid.logp(t, label_at(s));
    }
    std::swap(alpha, next);
  }
  return S == 1 ? alpha[0] : LogAdd(alpha[S - 1], alpha[S - 2]);
}

FramePath SamplePath(const PosteriorGrid& grid, Rng& rng, double temperature) {
  if (!(temperature > 0.0)) {
    throw InvalidArgument("sampling temperature must be positive");
  }
  const std::size_t V1 = grid.num_labels();
  FramePath path;
  path.labels.resize(grid.frames());
  std::vector<double> cdf(V1);
  for (std::size_t t = 0; t < grid.frames(); ++t) {
    auto row = grid.row(t);
    const double peak = *std::max_element(row.begin(), row.end());
    double total = 0.0;
    for (std::size_t c = 0; c < V1; ++c) {
      total += std::exp((row[c] - peak) / temperature);
      cdf[c] = total;
    }
    const double u = rng.Uniform() * total;
    std::size_t pick = 0;
    while (pick + 1 < V1 && !(u < cdf[pick])) ++pick;
    // Never land on a zero-probability label through rounding at the top.
    while (IsLogZero(row[pick]) && pick > 0) --pick;
    path.labels[t] = static_cast<Label>(pick);
  }
  return path;
}

std::vector<PhonemeSequence> SampleHypotheses(const PosteriorGrid& grid,
                                              std::size_t k, Rng& rng,
                                              double temperature) {
  if (k == 0) throw InvalidArgument("sample count k must be >= 1");
  std::vector<PhonemeSequence> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(
        Collapse(SamplePath(grid, rng, temperature), grid.num_labels()));
  }
  return out;
}

namespace {

struct PrefixMass {
  double blank = kLogZero;     // paths ending in blank
  double nonblank = kLogZero;  // paths ending in the prefix's last label
  double Total() const { return LogAdd(blank, nonblank); }
};

using Beam = std::map<std::vector<Label>, PrefixMass>;

std::vector<ScoredHypothesis> Ranked(const Beam& beam) {
  std::vector<ScoredHypothesis> ranked;
  ranked.reserve(beam.size());
  for (const auto& [prefix, mass] : beam) {
    const double total = mass.Total();
    if (IsLogZero(total)) continue;
    ranked.push_back({PhonemeSequence{prefix}, total});
  }
  std::sort(ranked.begin(), ranked.end(), RanksBefore);
  return ranked;
}

}  // namespace

std::vector<ScoredHypothesis> PrefixBeamSearch(const PosteriorGrid& grid,
                                               std::size_t beam_width,
                                               std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be >= 1");
  if (beam_width < k) {
    throw InvalidArgument("beam width " + std::to_string(beam_width) +
                          " is smaller than k = " + std::to_string(k));
  }
  const std::size_t V1 = grid.num_labels();

  Beam beam;
  beam[{}] = PrefixMass{0.0, kLogZero};

  for (std::size_t t = 0; t < grid.frames(); ++t) {
    Beam next;
    const double p_blank = grid.logp(t, kBlank);
    for (const auto& [prefix, mass] : beam) {
      const double total = mass.Total();

      auto& stay = next[prefix];
      stay.blank = LogAdd(stay.blank, total + p_blank);

      const Label last = prefix.empty() ? kBlank : prefix.back();
      for (std::size_t c = 1; c < V1; ++c) {
        const double p = grid.logp(t, static_cast<Label>(c));
        if (IsLogZero(p)) continue;
        const Label label = static_cast<Label>(c);
        std::vector<Label> extended = prefix;
        extended.push_back(label);
        auto& ext = next[extended];
        if (label == last) {
          // A repeat only extends the prefix after an intervening blank;
          // otherwise it merges into the current run.
          ext.nonblank = LogAdd(ext.nonblank, mass.blank + p);
          auto& same = next[prefix];
          same.nonblank = LogAdd(same.nonblank, mass.nonblank + p);
        } else {
          ext.nonblank = LogAdd(ext.nonblank, total + p);
        }
      }
    }

    auto ranked = Ranked(next);
    if (ranked.size() > beam_width) ranked.resize(beam_width);
    beam.clear();
    for (const auto& hyp : ranked) {
      beam.emplace(hyp.sequence.tokens, next.at(hyp.sequence.tokens));
    }
  }

  auto result = Ranked(beam);
  if (result.size() > k) result.resize(k);
  return result;
}

}  // namespace p2g
