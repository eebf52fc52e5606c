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

#ifndef P2G_METRICS_H_
#define P2G_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace p2g {

using TokenSeq = std::vector<std::string>;

// Levenshtein distance with unit insert, delete and substitute costs.
std::size_t EditDistance(std::span<const std::string> ref,
                         std::span<const std::string> hyp);

// NFC-normalizes `text` and splits it on Unicode White_Space.
TokenSeq TokenizeWords(std::string_view text);

// Corpus-pooled rate: 100 * sum(edits) / sum(|ref|). Throws InvalidArgument
// for an empty list or when every reference is empty.
double ErrorRate(std::span<const std::pair<TokenSeq, TokenSeq>> pairs);

// 100 * matches / total. Throws InvalidArgument when empty.
double LidAccuracy(
    std::span<const std::pair<std::string, std::string>> ref_hyp);

struct Aggregate {
  double macro_avg = 0.0;           // unweighted mean over languages
  double hours_weighted_avg = 0.0;  // sum(v * H) / sum(H)
};

// Throws InvalidArgument when the key sets differ, are empty, or the hours
// do not sum to a positive value.
Aggregate AggregateByLanguage(const std::map<std::string, double>& values,
                              const std::map<std::string, double>& hours);

// Half-away-from-zero rounding to two decimals, for display.
double Round2(double x);

struct LanguageEval {
  double error_rate = 0.0;  // WER, percent
  double lid_acc = 0.0;     // percent
  double hours = 0.0;
  std::size_t utterances = 0;
};

struct EvalReport {
  std::map<std::string, LanguageEval> per_language;
  Aggregate wer;
  Aggregate lid;
};

struct EvalItem {
  std::string ref_lang;
  std::string ref_text;
  std::string hyp_lang;
  std::string hyp_text;
};

// WER and LID accuracy per reference language, aggregated with `hours`.
// Every language in `items` needs an entry in `hours`.
EvalReport Evaluate(std::span<const EvalItem> items,
                    const std::map<std::string, double>& hours);

// Aligned text table: one row per metric, one column per language, then
// avg and hrs-wavg.
std::string FormatReportTable(const EvalReport& report);
std::string FormatReportJson(const EvalReport& report);

}  // namespace p2g

#endif  // P2G_METRICS_H_
