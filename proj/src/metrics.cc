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

#include "p2g/metrics.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "p2g/common.h"

namespace p2g {

std::size_t EditDistance(std::span<const std::string> ref,
                         std::span<const std::string> hyp) {
  // Single-row DP over hyp.
  std::vector<std::size_t> row(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, sub});
      diag = up;
    }
  }
  return row[hyp.size()];
}

TokenSeq TokenizeWords(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC unavailable");
  // Validate first: ICU would silently substitute U+FFFD.
  DecodeUtf8(text);
  const icu::UnicodeString normalized = nfc->normalize(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(text.data(), static_cast<int32_t>(text.size()))),
      status);
  if (U_FAILURE(status)) throw InvalidInput("NFC normalization failed");

  TokenSeq words;
  icu::UnicodeString current;
  auto flush = [&] {
    if (current.isEmpty()) return;
    std::string utf8;
    current.toUTF8String(utf8);
    words.push_back(std::move(utf8));
    current.remove();
  };
  for (int32_t i = 0; i < normalized.length();) {
    const UChar32 cp = normalized.char32At(i);
    if (u_isUWhiteSpace(cp)) {
      flush();
    } else {
      current.append(cp);
    }
    i += U16_LENGTH(cp);
  }
  flush();
  return words;
}

double ErrorRate(std::span<const std::pair<TokenSeq, TokenSeq>> pairs) {
  if (pairs.empty()) throw InvalidArgument("no utterances to score");
  std::size_t edits = 0;
  std::size_t ref_len = 0;
  for (const auto& [ref, hyp] : pairs) {
    edits += EditDistance(ref, hyp);
    ref_len += ref.size();
  }
  if (ref_len == 0) {
    throw InvalidArgument("error rate undefined: references are all empty");
  }
  return 100.0 * static_cast<double>(edits) / static_cast<double>(ref_len);
}

double LidAccuracy(
    std::span<const std::pair<std::string, std::string>> ref_hyp) {
  if (ref_hyp.empty()) throw InvalidArgument("no LID decisions to score");
  const auto hits = std::count_if(ref_hyp.begin(), ref_hyp.end(),
                                  [](const auto& p) { return p.first == p.second; });
  return 100.0 * static_cast<double>(hits) /
         static_cast<double>(ref_hyp.size());
}

Aggregate AggregateByLanguage(const std::map<std::string, double>& values,
                              const std::map<std::string, double>& hours) {
  if (values.empty()) throw InvalidArgument("nothing to aggregate");
  if (values.size() != hours.size() ||
      !std::equal(values.begin(), values.end(), hours.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw InvalidArgument("value and hours maps cover different languages");
  }
  double sum = 0.0;
  double weighted = 0.0;
  double total_hours = 0.0;
  for (const auto& [lang, v] : values) {
    const double h = hours.at(lang);
    if (h < 0.0) throw InvalidArgument("negative hours for '" + lang + "'");
    sum += v;
    weighted += v * h;
    total_hours += h;
  }
  if (!(total_hours > 0.0)) throw InvalidArgument("total hours must be > 0");
  return {sum / static_cast<double>(values.size()), weighted / total_hours};
}

double Round2(double x) { return std::round(x * 100.0) / 100.0; }

EvalReport Evaluate(std::span<const EvalItem> items,
                    const std::map<std::string, double>& hours) {
  if (items.empty()) throw InvalidArgument("nothing to evaluate");
  std::map<std::string, std::vector<std::pair<TokenSeq, TokenSeq>>> words;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> lids;
  for (const auto& item : items) {
    words[item.ref_lang].emplace_back(TokenizeWords(item.ref_text),
                                      TokenizeWords(item.hyp_text));
    lids[item.ref_lang].emplace_back(item.ref_lang, item.hyp_lang);
  }

  EvalReport report;
  std::map<std::string, double> wer, lid, used_hours;
  for (const auto& [lang, pairs] : words) {
    auto it = hours.find(lang);
    if (it == hours.end()) {
      throw InvalidArgument("no training hours given for language '" + lang +
                            "'");
    }
    LanguageEval& e = report.per_language[lang];
    e.error_rate = ErrorRate(pairs);
    e.lid_acc = LidAccuracy(lids[lang]);
    e.hours = it->second;
    e.utterances = pairs.size();
    wer[lang] = e.error_rate;
    lid[lang] = e.lid_acc;
    used_hours[lang] = e.hours;
  }
  report.wer = AggregateByLanguage(wer, used_hours);
  report.lid = AggregateByLanguage(lid, used_hours);
  return report;
}

std::string FormatReportTable(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  auto cell = [&](const auto& v) { out << std::setw(9) << v; };
  out << std::left << std::setw(16) << "metric" << std::right;
  for (const auto& [lang, e] : report.per_language) cell(lang);
  cell("avg");
  cell("hrs-wavg");
  out << '\n';

  auto row = [&](const char* name, auto get, const Aggregate* agg) {
    out << std::left << std::setw(16) << name << std::right;
    for (const auto& [lang, e] : report.per_language) cell(Round2(get(e)));
    if (agg != nullptr) {
      cell(Round2(agg->macro_avg));
      cell(Round2(agg->hours_weighted_avg));
    } else {
      cell("--");
      cell("--");
    }
    out << '\n';
  };
  row("Training Hours", [](const LanguageEval& e) { return e.hours; }, nullptr);
  row("WER (%)", [](const LanguageEval& e) { return e.error_rate; },
      &report.wer);
  row("LID acc (%)", [](const LanguageEval& e) { return e.lid_acc; },
      &report.lid);
  return out.str();
}

std::string FormatReportJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const auto& [lang, e] : report.per_language) {
    langs[lang] = {{"wer", e.error_rate},
                   {"lid_acc", e.lid_acc},
                   {"hours", e.hours},
                   {"utterances", e.utterances}};
  }
  j["per_language"] = std::move(langs);
  j["wer"] = {{"macro_avg", report.wer.macro_avg},
              {"hours_weighted_avg", report.wer.hours_weighted_avg}};
  j["lid_acc"] = {{"macro_avg", report.lid.macro_avg},
                  {"hours_weighted_avg", report.lid.hours_weighted_avg}};
  return j.dump(2) + "\n";
}

}  // namespace p2g
