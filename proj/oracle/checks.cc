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

#include "checks.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "brute_force.h"
#include "p2g/common.h"
#include "p2g/datapipe.h"
#include "p2g/decoder.h"
#include "p2g/io.h"
#include "p2g/marginal.h"
#include "p2g/metrics.h"
#include "p2g/synthetic.h"

namespace p2g::oracle {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

PosteriorGrid TinyGrid(Rng& rng, std::size_t max_frames,
                       std::size_t max_symbols, const std::string& id) {
  const std::size_t frames = 1 + rng.Below(max_frames);
  const std::size_t symbols = 1 + rng.Below(max_symbols);
  return RandomGrid(id, NumberedAlphabet(symbols), frames, rng);
}

// Rows mixed half-and-half with uniform, so every path has probability at
// least (0.5 / (V+1))^T.
PosteriorGrid FlooredGrid(Rng& rng, std::size_t frames, std::size_t symbols,
                          const std::string& id) {
  const Alphabet alphabet = NumberedAlphabet(symbols);
  const PosteriorGrid raw = RandomGrid(id, alphabet, frames, rng);
  std::vector<std::vector<double>> rows;
  const double uniform = 1.0 / static_cast<double>(alphabet.num_labels());
  for (std::size_t t = 0; t < frames; ++t) {
    std::vector<double> r;
    for (double v : raw.row(t)) {
      r.push_back(std::log(0.5 * std::exp(v) + 0.5 * uniform));
    }
    rows.push_back(std::move(r));
  }
  return PosteriorGrid(id, alphabet, rows, /*renormalize=*/true);
}

long double ExactCascade(const PosteriorGrid& grid, const TargetText& y,
                         const ConditionalScorer& scorer) {
  return PathMarginal(grid, [&](const Labels& h) {
    return std::exp(
        static_cast<long double>(scorer.LogScore(y, PhonemeSequence{h})));
  });
}

const std::vector<std::string> kTinyChars = {"x", "y"};

}  // namespace

std::string FormatCheck(const CheckResult& result) {
  return Fmt("[%s] %s: %s (%.2f s)", result.passed ? "PASS" : "FAIL",
             result.name.c_str(), result.detail.c_str(), result.seconds);
}

NGramScorer RandomTinyScorer(const Alphabet& alphabet,
                             const std::vector<std::string>& chars, Rng& rng,
                             double alpha, int order) {
  const std::vector<std::string> lids = {"aa", "bb"};
  std::vector<TrainingPair> pairs;
  for (int i = 0; i < 6; ++i) {
    TrainingPair p;
    const std::size_t hl = rng.Below(4);
    for (std::size_t j = 0; j < hl; ++j) {
      p.phonemes.tokens.push_back(
          static_cast<Label>(1 + rng.Below(alphabet.size())));
    }
    p.text.lid = lids[rng.Below(lids.size())];
    const std::size_t tl = rng.Below(4);
    for (std::size_t j = 0; j < tl; ++j) p.text.text += chars[rng.Below(chars.size())];
    pairs.push_back(std::move(p));
  }
  // Make sure every character is in the inventory.
  for (const auto& c : chars) pairs.push_back({{}, {lids[0], c}});
  NGramOptions options;
  options.order = order;
  options.alpha = alpha;
  options.languages = lids;
  return NGramScorer::Train(alphabet, pairs, options);
}

CheckResult CheckForwardOracle(const ForwardCheckOptions& options,
                               const Hooks& hooks) {
  const auto start = Clock::now();
  CheckResult result{"forward-oracle", true, "", 0.0};
  Rng rng(options.seed);
  double worst = 0.0;
  std::size_t compared = 0;
  bool unreachable_ok = true;
  for (std::size_t g = 0; g < options.grids; ++g) {
    const auto grid = TinyGrid(rng, options.max_frames, options.max_symbols,
                               "grid-" + std::to_string(g));
    for (const auto& [h, p] : CollapsedDistribution(grid)) {
      const double got = hooks.forward(grid, PhonemeSequence{h});
      const double want = static_cast<double>(std::log(p));
      const double diff = std::abs(got - want);
      worst = std::max(worst, std::isnan(diff) ? INFINITY : diff);
      ++compared;
    }
    // T + 1 labels can never fit in T frames.
    PhonemeSequence too_long{Labels(grid.frames() + 1, 1)};
    if (!IsLogZero(hooks.forward(grid, too_long))) unreachable_ok = false;
  }
  result.seconds = SecondsSince(start);
  result.passed = worst <= options.tolerance && unreachable_ok &&
                  result.seconds < options.time_limit_sec;
  result.detail = Fmt(
      "%zu grids, %zu sequences, max |log diff| = %.3g (tol %.0e), "
      "unreachable -> log-zero: %s, limit %.0f s",
      options.grids, compared, worst, options.tolerance,
      unreachable_ok ? "yes" : "no", options.time_limit_sec);
  return result;
}

CheckResult CheckPartition(const PartitionCheckOptions& options,
                           const Hooks& hooks) {
  const auto start = Clock::now();
  CheckResult result{"partition", true, "", 0.0};
  Rng rng(options.seed);
  double worst = 0.0;
  for (std::size_t g = 0; g < options.grids; ++g) {
    const auto grid = TinyGrid(rng, options.max_frames, options.max_symbols,
                               "grid-" + std::to_string(g));
    double total = 0.0;
    for (const auto& [h, p] : CollapsedDistribution(grid)) {
      total += std::exp(hooks.forward(grid, PhonemeSequence{h}));
    }
    const double diff = std::abs(total - 1.0);
    worst = std::max(worst, std::isnan(diff) ? INFINITY : diff);
  }
  result.seconds = SecondsSince(start);
  result.passed = worst <= options.tolerance;
  result.detail = Fmt("%zu grids, max |sum_h p(h|x) - 1| = %.3g (tol %.0e)",
                      options.grids, worst, options.tolerance);
  return result;
}

CheckResult CheckSskmUnbiased(const SskmCheckOptions& options) {
  const auto start = Clock::now();
  CheckResult result{"sskm-unbiased", true, "", 0.0};
  Rng rng(options.seed);
  const auto grid = RandomGrid("fixed", NumberedAlphabet(2), 4, rng);
  const auto scorer = RandomTinyScorer(grid.alphabet(), kTinyChars, rng, 0.5);
  const TargetText y{"aa", "xy"};
  const double exact = static_cast<double>(ExactCascade(grid, y, scorer));

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t r = 0; r < options.runs; ++r) {
    Rng run = Rng::ForStream(options.seed, "sskm-run", r);
    const double v =
        std::exp(SskmLogMarginal(grid, y, scorer, options.k, run).log_marginal);
    sum += v;
    sum_sq += v * v;
  }
  const auto n = static_cast<double>(options.runs);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  const double se = std::sqrt(var / n);
  const double z = se > 0.0 ? std::abs(mean - exact) / se : INFINITY;
  result.seconds = SecondsSince(start);
  result.passed = z <= options.sigmas && result.seconds < options.time_limit_sec;
  result.detail = Fmt(
      "%zu runs x k=%zu: mean %.6g vs exact %.6g, SE %.3g, |z| = %.2f "
      "(limit %.0f), limit %.0f s",
      options.runs, options.k, mean, exact, se, z, options.sigmas,
      options.time_limit_sec);
  return result;
}

CheckResult CheckTkmExact(const TkmCheckOptions& options, const Hooks& hooks) {
  const auto start = Clock::now();
  CheckResult result{"tkm-exact", true, "", 0.0};
  Rng rng(options.seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < options.instances; ++i) {
    const auto grid = TinyGrid(rng, options.max_frames, options.max_symbols,
                               "tkm-" + std::to_string(i));
    const auto scorer =
        RandomTinyScorer(grid.alphabet(), kTinyChars, rng, 0.3);
    const TargetText y{rng.Below(2) == 0 ? "aa" : "bb",
                       kTinyChars[rng.Below(2)]};
    std::vector<ScoredHypothesis> hyps;
    for (const auto& [h, p] : CollapsedDistribution(grid)) {
      PhonemeSequence seq{h};
      hyps.push_back({seq, hooks.forward(grid, seq)});
    }
    const double got = TkmLogMarginal(hyps, y, scorer).log_marginal;
    const double want =
        static_cast<double>(std::log(ExactCascade(grid, y, scorer)));
    const double diff = std::abs(got - want);
    worst = std::max(worst, std::isnan(diff) ? INFINITY : diff);
  }
  result.seconds = SecondsSince(start);
  result.passed = worst <= options.tolerance;
  result.detail = Fmt("%zu instances, max |log diff| = %.3g (tol %.0e)",
                      options.instances, worst, options.tolerance);
  return result;
}

CheckResult CheckSkmAgreement(const SkmCheckOptions& options) {
  const auto start = Clock::now();
  CheckResult result{"skm-sskm-agreement", true, "", 0.0};
  Rng rng(options.seed);
  double worst_skm = 0.0;
  double worst_rel = 0.0;
  std::size_t uncovered = 0;
  for (std::size_t i = 0; i < options.instances; ++i) {
    const std::size_t frames = 1 + rng.Below(options.max_frames);
    const std::size_t symbols = 1 + rng.Below(options.max_symbols);
    const auto grid =
        FlooredGrid(rng, frames, symbols, "skm-" + std::to_string(i));
    const auto scorer = RandomTinyScorer(grid.alphabet(), kTinyChars, rng, 1.0);
    const TargetText y{"bb", "y"};
    const long double exact = ExactCascade(grid, y, scorer);

    // Same stream twice: once to inspect coverage, once for the estimate.
    Rng probe = Rng::ForStream(options.seed, grid.utterance_id());
    const auto samples = SampleHypotheses(grid, options.skm_k, probe);
    const std::set<PhonemeSequence> seen(samples.begin(), samples.end());
    if (seen.size() != CollapsedDistribution(grid).size()) ++uncovered;

    Rng skm_rng = Rng::ForStream(options.seed, grid.utterance_id());
    const double skm =
        SkmLogMarginal(grid, y, scorer, options.skm_k, skm_rng).log_marginal;
    worst_skm = std::max(worst_skm,
                         std::abs(skm - static_cast<double>(std::log(exact))));

    Rng sskm_rng = Rng::ForStream(options.seed ^ 0x5eed, grid.utterance_id());
    const double sskm =
        SskmLogMarginal(grid, y, scorer, options.sskm_k, sskm_rng).log_marginal;
    worst_rel = std::max(
        worst_rel, std::abs(std::exp(sskm) / static_cast<double>(exact) - 1.0));
  }
  result.seconds = SecondsSince(start);
  result.passed = uncovered == 0 && worst_skm <= options.skm_tolerance &&
                  worst_rel <= options.sskm_relative;
  result.detail = Fmt(
      "%zu instances; SKM k=%zu full coverage on %zu/%zu, max |log diff| = "
      "%.3g (tol %.0e); S-SKM k=%zu max rel err = %.3g%% (tol %.0f%%)",
      options.instances, options.skm_k, options.instances - uncovered,
      options.instances, worst_skm, options.skm_tolerance, options.sskm_k,
      100.0 * worst_rel, 100.0 * options.sskm_relative);
  return result;
}

CheckResult CheckBeamOracle(const BeamCheckOptions& options) {
  const auto start = Clock::now();
  CheckResult result{"beam-oracle", true, "", 0.0};
  Rng rng(options.seed);
  double worst = 0.0;
  std::size_t mismatched = 0;
  for (std::size_t g = 0; g < options.grids; ++g) {
    const auto grid = TinyGrid(rng, options.max_frames, options.max_symbols,
                               "beam-" + std::to_string(g));
    std::vector<std::pair<Labels, long double>> want;
    for (const auto& [h, p] : CollapsedDistribution(grid)) want.emplace_back(h, p);
    std::sort(want.begin(), want.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    // Width large enough that no prefix is ever pruned.
    const auto got = PrefixBeamSearch(grid, 100000, want.size());
    if (got.size() != want.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (got[i].sequence.tokens != want[i].first) {
        ++mismatched;
        break;
      }
      worst = std::max(worst, std::abs(got[i].log_score -
                                       static_cast<double>(std::log(want[i].second))));
    }
  }
  result.seconds = SecondsSince(start);
  result.passed = mismatched == 0 && worst <= options.tolerance;
  result.detail = Fmt(
      "%zu grids, %zu ranking mismatches, max |log score diff| = %.3g "
      "(tol %.0e)",
      options.grids, mismatched, worst, options.tolerance);
  return result;
}

CheckResult CheckDecodeOracle(const DecodeCheckOptions& options) {
  const auto start = Clock::now();
  CheckResult result{"decode-oracle", true, "", 0.0};
  Rng rng(options.seed);
  const std::vector<std::string> chars = {"x", "y", "z"};
  std::size_t wrong = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < options.instances; ++i) {
    const auto grid = TinyGrid(rng, options.max_frames, 2,
                               "decode-" + std::to_string(i));
    const auto scorer = RandomTinyScorer(grid.alphabet(), chars, rng, 0.2);
    const auto oracle = ExhaustiveCascade(grid, scorer, chars, options.max_len);

    DecodeOptions opts;
    opts.k = CollapsedDistribution(grid).size();
    opts.s = oracle.size();
    opts.beam_width = 100000;
    opts.max_len = options.max_len;
    const auto decoded = Decode(grid, scorer, opts);

    if (decoded.best != TieBrokenArgmax(oracle, kTieTolerance)) ++wrong;
    if (decoded.pool.size() != oracle.size()) {
      ++wrong;
      continue;
    }
    std::map<TargetText, long double> want;
    for (const auto& ts : oracle) want[ts.text] = ts.prob;
    for (const auto& c : decoded.pool) {
      const double diff =
          std::abs(c.log_prob - static_cast<double>(std::log(want.at(c.text))));
      worst = std::max(worst, diff);
    }
  }
  result.seconds = SecondsSince(start);
  result.passed = wrong == 0 && worst <= options.tolerance;
  result.detail = Fmt(
      "%zu instances, %zu argmax/pool mismatches, max |pooled log diff| = "
      "%.3g (tol %.0e)",
      options.instances, wrong, worst, options.tolerance);
  return result;
}

CheckResult CheckMetricFixtures() {
  const auto start = Clock::now();
  CheckResult result{"metric-fixtures", true, "", 0.0};
  const auto& hours = BenchmarkTrainingHours();
  const std::vector<std::string> langs = {"en", "es", "fr", "it", "ky",
                                          "nl", "ru", "sv", "tr", "tt"};
  struct Fixture {
    const char* name;
    std::vector<double> values;
    double avg;
    double wavg;
  };
  const std::vector<Fixture> fixtures = {
      {"E1 WER",
       {8.26, 5.84, 10.44, 6.84, 10.07, 6.05, 5.98, 17.94, 10.92, 23.25},
       10.56, 8.46},
      {"E4 WER",
       {8.22, 6.12, 10.62, 7.17, 2.82, 5.48, 3.90, 10.59, 7.33, 14.34},
       7.66, 8.22},
      {"S2P PER",
       {5.42, 1.96, 3.52, 2.25, 4.06, 2.64, 2.97, 11.33, 4.04, 5.97},
       4.41, 4.37},
      {"E1 LID",
       {99.72, 99.54, 99.80, 99.05, 99.01, 99.73, 99.44, 97.91, 98.88, 95.63},
       98.87, 99.61},
  };
  std::string detail;
  for (const auto& f : fixtures) {
    std::map<std::string, double> values;
    for (std::size_t i = 0; i < langs.size(); ++i) values[langs[i]] = f.values[i];
    const auto agg = AggregateByLanguage(values, hours);
    const bool ok = std::abs(agg.macro_avg - f.avg) <= 0.01 + 1e-9 &&
                    std::abs(agg.hours_weighted_avg - f.wavg) <= 0.01 + 1e-9;
    result.passed = result.passed && ok;
    if (!detail.empty()) detail += "; ";
    detail += Fmt("%s %.3f/%.3f vs %.2f/%.2f", f.name, agg.macro_avg,
                  agg.hours_weighted_avg, f.avg, f.wavg);
  }
  result.seconds = SecondsSince(start);
  result.detail = detail + " (tol 0.01)";
  return result;
}

CheckResult CheckOversampling(const OversampleCheckOptions& options) {
  const auto start = Clock::now();
  CheckResult result{"oversampling-envelope", true, "", 0.0};
  const auto& hours = BenchmarkTrainingHours();
  const auto manifest =
      HoursManifest(hours, options.min_dur, options.max_dur, options.seed);
  const auto balanced =
      OversampleManifest(manifest, options.target_hours, options.seed);
  const auto stats = ManifestStats(balanced);

  auto lines_of = [](const CorpusManifest& m, const std::string& lang) {
    std::string out;
    for (const auto& r : m.records) {
      if (r.lang == lang) out += RecordToJson(r) + "\n";
    }
    return out;
  };

  const double upper = options.target_hours + options.max_dur / 3600.0;
  std::size_t oversampled = 0;
  std::size_t untouched = 0;
  bool ok = true;
  std::string bad;
  for (const auto& [lang, h] : hours) {
    const auto& s = stats.at(lang);
    if (h < options.target_hours) {
      ++oversampled;
      if (!(s.effective_hours >= options.target_hours &&
            s.effective_hours < upper)) {
        ok = false;
        bad += " " + lang;
      }
    } else {
      ++untouched;
      if (lines_of(manifest, lang) != lines_of(balanced, lang)) {
        ok = false;
        bad += " " + lang;
      }
    }
  }
  const double ky_factor = stats.at("ky").repetition_factor;
  const double ky_expected = options.target_hours / 32.7;
  const bool ky_ok =
      std::abs(ky_factor / ky_expected - 1.0) <= options.ky_factor_relative;
  result.seconds = SecondsSince(start);
  result.passed = ok && ky_ok && oversampled == 6 && untouched == 4;
  result.detail = Fmt(
      "%zu oversampled into [%.1f, %.4f) h, %zu byte-identical; ky factor "
      "%.4f vs %.4f (tol %.0f%%)%s%s",
      oversampled, options.target_hours, upper, untouched, ky_factor,
      ky_expected, 100.0 * options.ky_factor_relative,
      bad.empty() ? "" : "; failing:", bad.c_str());
  return result;
}

CheckResult CheckSerializationRoundTrip(const RoundTripCheckOptions& options) {
  const auto start = Clock::now();
  CheckResult result{"serialization-roundtrip", true, "", 0.0};
  const std::vector<std::string> phonemes = {
      "a", "e", "i", "o", "u", "ə", "ɛ", "ɪ", "ʊ", "æ", "ɑ", "ɒ", "ø", "y",
      "ɯ", "ɤ", "k", "t", "s", "ʃ", "tʃ", "dʒ", "ɲ", "ŋ", "ʎ", "ʑ", "θ", "ð",
      "aː", "oʊ", "ts", "pʰ", "ɾ", "ʁ", "x", "<", ">", "lid"};
  const std::vector<std::string> lids = {"en", "es", "fr", "it", "ky",
                                         "nl", "ru", "sv", "tr", "tt"};
  const std::vector<std::string> chars = {
      "a", "b", "z", " ", "ñ", "é", "ç", "ö", "å", "ş", "ğ", "ı", "к", "ы",
      "ө", "ң", "ә", "җ", "ү", "ж", "я", "中", "文", "日", "ع", "ب", "न", "ी",
      "|", "<", ">", "<ipa>", "😀", "'", "-", "\t"};
  Rng rng(options.seed);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < options.pairs; ++i) {
    std::vector<std::string> p;
    const std::size_t np = rng.Below(12);
    for (std::size_t j = 0; j < np; ++j) {
      p.push_back(phonemes[rng.Below(phonemes.size())]);
    }
    TargetText t{lids[rng.Below(lids.size())], ""};
    const std::size_t nc = rng.Below(20);
    for (std::size_t j = 0; j < nc; ++j) t.text += chars[rng.Below(chars.size())];
    const TrainingLine want{p, t};
    try {
      if (ParseTrainingLine(SerializeTrainingLine(p, t)) != want) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  result.seconds = SecondsSince(start);
  result.passed = failures == 0;
  result.detail =
      Fmt("%zu random pairs, %zu failures", options.pairs, failures);
  return result;
}

}  // namespace p2g::oracle
