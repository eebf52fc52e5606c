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

// p2g: phoneme-hypothesis generation, marginal-likelihood scoring, decoding,
// data preparation and evaluation for phoneme-to-grapheme conversion.
//
// Exit status: 0 success, 1 bad configuration, 2 malformed input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "p2g/common.h"
#include "p2g/datapipe.h"
#include "p2g/decoder.h"
#include "p2g/io.h"
#include "p2g/marginal.h"
#include "p2g/metrics.h"
#include "p2g/scorer.h"
#include "p2g/synthetic.h"
#include "selftest.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace p2g {
namespace {

// Raised for option combinations the parser cannot express.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  std::size_t k = 8;
  std::size_t s = 4;
  std::size_t beam_width = 16;
  std::size_t n_best = 16;
  std::size_t max_len = 64;
  double target_hours = 240.0;
  std::string method = "sskm";
  bool normalize_weights = false;
  bool resample = false;
  bool include_clean = false;
  std::size_t epochs = 1;
  std::size_t threads = 1;
  double temperature = 1.0;

  std::string in;
  std::string out;
  std::string manifest;
  std::string scorer;
  std::string lines;
  std::string grids;
  std::string hours_from;
  std::string table;
  std::string out_dir;

  // train-scorer
  int order = 3;
  int window = 1;
  double alpha = 0.1;
  std::vector<std::string> languages;

  // synth
  std::vector<std::string> utterances = {"en=120", "es=80", "ky=24", "tt=16"};
  double test_fraction = 0.2;
  bool benchmark_hours = false;
  double min_dur = 20.0;
  double max_dur = 60.0;

  std::vector<std::string> required;
};

std::uint64_t RequireSeed(const RunConfig& cfg, const char* command) {
  if (!cfg.seed) {
    throw ConfigError(std::string(command) +
                      " is randomized and needs an explicit --seed");
  }
  return *cfg.seed;
}

std::string Require(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string("missing required ") + flag);
  return value;
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

std::string ReadFile(const std::string& path) {
  auto in = OpenInput(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temporary and renames over `path`.
void WriteAtomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
  spdlog::info("wrote {}", path);
}

std::vector<PosteriorGrid> LoadGrids(const std::string& path) {
  auto in = OpenInput(path);
  return ReadGrids(in, path);
}

CorpusManifest LoadManifest(const std::string& path) {
  auto in = OpenInput(path);
  return ReadManifest(in, path);
}

NGramScorer LoadScorer(const std::string& path) {
  try {
    return NGramScorer::FromJson(ReadFile(path));
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write
// results into slot i, so output order never depends on scheduling.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += threads) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::map<std::string, const UtteranceRecord*> IndexById(
    const CorpusManifest& manifest) {
  std::map<std::string, const UtteranceRecord*> index;
  for (const auto& r : manifest.records) {
    if (r.repetition == 0) index.emplace(r.id, &r);
  }
  return index;
}

std::vector<std::string> Symbols(const PhonemeSequence& h,
                                 const Alphabet& alphabet) {
  std::vector<std::string> out;
  for (Label l : h.tokens) out.push_back(alphabet.SymbolOf(l));
  return out;
}

PhonemeSequence ToSequence(const std::vector<std::string>& symbols,
                           const Alphabet& alphabet) {
  PhonemeSequence h;
  for (const auto& s : symbols) h.tokens.push_back(alphabet.LabelOf(s));
  return h;
}

// --- commands -------------------------------------------------------------

int CmdSynth(const RunConfig& cfg) {
  const std::uint64_t seed = RequireSeed(cfg, "synth");
  const std::string dir = Require(cfg.out_dir, "--out-dir");
  if (cfg.benchmark_hours) {
    WriteAtomic(dir + "/benchmark.jsonl",
                ManifestToJsonl(HoursManifest(BenchmarkTrainingHours(),
                                              cfg.min_dur, cfg.max_dur, seed)));
    return 0;
  }
  ToyCorpusOptions options;
  options.test_fraction = cfg.test_fraction;
  for (const auto& spec : cfg.utterances) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--utts expects lang=count, got '" + spec + "'");
    }
    options.utterances[spec.substr(0, eq)] =
        static_cast<std::size_t>(std::stoul(spec.substr(eq + 1)));
  }
  const auto corpus = MakeToyCorpus(options, seed);
  auto grids_jsonl = [](const std::vector<PosteriorGrid>& grids) {
    std::string out;
    for (const auto& g : grids) out += GridToJson(g) + "\n";
    return out;
  };
  WriteAtomic(dir + "/train.jsonl", ManifestToJsonl(corpus.train));
  WriteAtomic(dir + "/test.jsonl", ManifestToJsonl(corpus.test));
  WriteAtomic(dir + "/train_grids.jsonl", grids_jsonl(corpus.train_grids));
  WriteAtomic(dir + "/test_grids.jsonl", grids_jsonl(corpus.test_grids));
  return 0;
}

int CmdBeam(const RunConfig& cfg) {
  const auto grids = LoadGrids(Require(cfg.in, "--in"));
  std::vector<std::string> lines(grids.size());
  ParallelFor(grids.size(), cfg.threads, [&](std::size_t i) {
    const auto& g = grids[i];
    ordered_json j;
    j["id"] = g.utterance_id();
    auto hyps = ordered_json::array();
    for (const auto& h : PrefixBeamSearch(g, std::max(cfg.beam_width, cfg.k), cfg.k)) {
      hyps.push_back({{"phonemes", Symbols(h.sequence, g.alphabet())},
                      {"logp", h.log_score}});
    }
    j["hyps"] = std::move(hyps);
    lines[i] = j.dump() + "\n";
  });
  std::string out;
  for (const auto& l : lines) out += l;
  WriteAtomic(Require(cfg.out, "--out"), out);
  return 0;
}

int CmdSample(const RunConfig& cfg) {
  const std::uint64_t seed = RequireSeed(cfg, "sample");
  const auto grids = LoadGrids(Require(cfg.in, "--in"));
  std::vector<std::string> lines(grids.size());
  ParallelFor(grids.size(), cfg.threads, [&](std::size_t i) {
    const auto& g = grids[i];
    Rng rng = Rng::ForStream(seed, g.utterance_id());
    ordered_json j;
    j["id"] = g.utterance_id();
    auto samples = ordered_json::array();
    for (const auto& h : SampleHypotheses(g, cfg.k, rng, cfg.temperature)) {
      samples.push_back(Symbols(h, g.alphabet()));
    }
    j["samples"] = std::move(samples);
    lines[i] = j.dump() + "\n";
  });
  std::string out;
  for (const auto& l : lines) out += l;
  WriteAtomic(Require(cfg.out, "--out"), out);
  return 0;
}

int CmdScore(const RunConfig& cfg) {
  const Method method = ParseMethod(cfg.method);
  std::uint64_t seed = 0;
  if (method != Method::kTkm) seed = RequireSeed(cfg, "score");
  const auto scorer = LoadScorer(Require(cfg.scorer, "--scorer"));
  const auto manifest = LoadManifest(Require(cfg.manifest, "--manifest"));
  const auto index = IndexById(manifest);

  std::vector<PosteriorGrid> grids;
  for (const auto& g : LoadGrids(Require(cfg.in, "--in"))) {
    grids.push_back(g.RemapTo(scorer.alphabet()));
  }
  std::vector<ObjectiveRecord> records;
  for (const auto& g : grids) {
    auto it = index.find(g.utterance_id());
    if (it == index.end()) {
      throw InvalidInput("no reference for grid '" + g.utterance_id() + "'");
    }
    records.push_back({&g, it->second->Target()});
  }
  if (records.empty()) throw InvalidInput("no grids to score");

  ordered_json summary;
  summary["method"] = cfg.method;
  summary["k"] = cfg.k;
  auto epochs = ordered_json::array();
  std::string out;
  for (std::size_t e = 0; e < cfg.epochs; ++e) {
    ObjectiveOptions options;
    options.method = method;
    options.k = cfg.k;
    options.beam_width = cfg.beam_width;
    options.normalize_weights = cfg.normalize_weights;
    options.seed = seed;
    options.epoch = cfg.resample ? e : 0;
    std::vector<MarginalEstimate> per_record(records.size());
    ParallelFor(records.size(), cfg.threads, [&](std::size_t i) {
      per_record[i] = EstimateRecord(records[i], scorer, options);
    });
    double sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      sum -= per_record[i].log_marginal;
      ordered_json j;
      j["id"] = records[i].grid->utterance_id();
      j["epoch"] = e;
      j["method"] = cfg.method;
      j["k_used"] = per_record[i].k_used;
      j["log_marginal"] = per_record[i].log_marginal;
      out += j.dump() + "\n";
    }
    epochs.push_back(sum / static_cast<double>(records.size()));
  }
  summary["mean_neg_log_marginal"] = std::move(epochs);
  WriteAtomic(Require(cfg.out, "--out"), out);
  std::cout << summary.dump() << std::endl;
  return 0;
}

int CmdDecode(const RunConfig& cfg) {
  const auto scorer = LoadScorer(Require(cfg.scorer, "--scorer"));
  const auto grids = LoadGrids(Require(cfg.in, "--in"));
  DecodeOptions options;
  options.k = cfg.k;
  options.s = cfg.s;
  options.beam_width = cfg.beam_width;
  options.max_len = cfg.max_len;
  options.normalize_weights = cfg.normalize_weights;
  std::vector<std::string> lines(grids.size());
  ParallelFor(grids.size(), cfg.threads, [&](std::size_t i) {
    const auto grid = grids[i].RemapTo(scorer.alphabet());
    lines[i] = DecodeToJson(grid.utterance_id(),
                            Decode(grid, scorer, options)) + "\n";
  });
  std::string out;
  for (const auto& l : lines) out += l;
  WriteAtomic(Require(cfg.out, "--out"), out);
  return 0;
}

int CmdAugment(const RunConfig& cfg) {
  const auto grids = LoadGrids(Require(cfg.in, "--in"));
  const auto manifest = LoadManifest(Require(cfg.manifest, "--manifest"));
  const auto index = IndexById(manifest);
  DanpOptions options;
  options.n_best = cfg.n_best;
  options.beam_width = cfg.beam_width;
  options.include_clean = cfg.include_clean;
  std::vector<std::string> chunks(grids.size());
  ParallelFor(grids.size(), cfg.threads, [&](std::size_t i) {
    auto it = index.find(grids[i].utterance_id());
    if (it == index.end()) {
      throw InvalidInput("no manifest record for grid '" +
                         grids[i].utterance_id() + "'");
    }
    for (const auto& pair : GenerateDanp(grids[i], *it->second, options)) {
      chunks[i] += SerializeTrainingLine(pair.phonemes, pair.text) + "\n";
    }
  });
  std::string out;
  for (const auto& c : chunks) out += c;
  WriteAtomic(Require(cfg.out, "--out"), out);
  return 0;
}

int CmdBalance(const RunConfig& cfg) {
  const std::uint64_t seed = RequireSeed(cfg, "balance");
  const std::string in = !cfg.in.empty() ? cfg.in : cfg.manifest;
  const auto manifest = LoadManifest(Require(in, "--in"));
  const std::set<std::string> required(cfg.required.begin(), cfg.required.end());
  const auto balanced =
      OversampleManifest(manifest, cfg.target_hours, seed, required);
  WriteAtomic(Require(cfg.out, "--out"), ManifestToJsonl(balanced));
  ordered_json summary = ordered_json::object();
  for (const auto& [lang, s] : ManifestStats(balanced)) {
    summary[lang] = {{"original_hours", s.original_hours},
                     {"effective_hours", s.effective_hours},
                     {"repetition_factor", s.repetition_factor},
                     {"original_records", s.original_records},
                     {"records", s.records},
                     {"oversampled", s.records > s.original_records}};
  }
  std::cout << summary.dump() << std::endl;
  return 0;
}

int CmdTrainScorer(const RunConfig& cfg) {
  if (cfg.manifest.empty() && cfg.lines.empty()) {
    throw ConfigError("train-scorer needs --manifest and/or --lines");
  }
  struct RawPair {
    std::vector<std::string> phonemes;
    TargetText text;
  };
  std::vector<RawPair> raw;
  std::set<std::string> symbols;
  if (!cfg.manifest.empty()) {
    for (const auto& r : LoadManifest(cfg.manifest).records) {
      raw.push_back({r.phonemes, r.Target()});
    }
  }
  if (!cfg.lines.empty()) {
    auto in = OpenInput(cfg.lines);
    for (auto& line : ReadTrainingLines(in, cfg.lines)) {
      raw.push_back({std::move(line.phonemes), std::move(line.text)});
    }
  }
  for (const auto& p : raw) symbols.insert(p.phonemes.begin(), p.phonemes.end());
  if (!cfg.grids.empty()) {
    for (const auto& g : LoadGrids(cfg.grids)) {
      symbols.insert(g.alphabet().symbols().begin(),
                     g.alphabet().symbols().end());
    }
  }
  const Alphabet alphabet({symbols.begin(), symbols.end()});
  std::vector<TrainingPair> pairs;
  pairs.reserve(raw.size());
  for (const auto& p : raw) {
    pairs.push_back({ToSequence(p.phonemes, alphabet), p.text});
  }
  NGramOptions options;
  options.order = cfg.order;
  options.window = cfg.window;
  options.alpha = cfg.alpha;
  options.languages = cfg.languages;
  const auto scorer = NGramScorer::Train(alphabet, pairs, options);
  spdlog::info("trained order-{} scorer on {} pairs: {} languages, {} characters",
               scorer.order(), pairs.size(), scorer.languages().size(),
               scorer.characters().size());
  WriteAtomic(Require(cfg.out, "--out"), scorer.ToJson() + "\n");
  return 0;
}

int CmdEval(const RunConfig& cfg) {
  std::vector<DecodeLine> decoded;
  {
    const std::string path = Require(cfg.in, "--in");
    auto in = OpenInput(path);
    decoded = ReadDecodeLines(in, path);
  }
  const auto refs = LoadManifest(Require(cfg.manifest, "--manifest"));
  const auto index = IndexById(refs);
  // Training hours come from the original (pre-oversampling) records.
  std::map<std::string, double> hours;
  if (cfg.hours_from.empty()) {
    hours = refs.LanguageHours();
  } else {
    for (const auto& [lang, s] : ManifestStats(LoadManifest(cfg.hours_from))) {
      hours[lang] = s.original_hours;
    }
  }
  std::vector<EvalItem> items;
  for (const auto& d : decoded) {
    auto it = index.find(d.id);
    if (it == index.end()) {
      throw InvalidInput("decoded id '" + d.id + "' has no reference");
    }
    items.push_back({it->second->lang, it->second->text, d.result.best.lid,
                     d.result.best.text});
  }
  const auto report = Evaluate(items, hours);
  const std::string table = FormatReportTable(report);
  std::cout << table;
  if (!cfg.table.empty()) WriteAtomic(cfg.table, table);
  WriteAtomic(Require(cfg.out, "--out"), FormatReportJson(report));
  return 0;
}

int CmdSelftest() {
  const auto results = oracle::RunSelftest(std::cout);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "selftest: all " + std::to_string(results.size()) +
                                  " checks passed"
                            : "selftest: " + std::to_string(failed) + " of " +
                                  std::to_string(results.size()) +
                                  " checks FAILED")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("p2g");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("P2G_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

}  // namespace
}  // namespace p2g

int main(int argc, char** argv) {
  using namespace p2g;
  SetUpLogging();

  CLI::App app{"p2g: CTC phoneme hypotheses, marginal likelihoods and "
               "phoneme-to-grapheme decoding"};
  app.set_config("--config", "", "TOML config file; flags override it");
  app.require_subcommand(1);
  RunConfig cfg;

  auto count = [](CLI::App* sub, const char* flag, std::size_t& v,
                  const char* help) {
    sub->add_option(flag, v, help)->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (required)");
  };
  auto threads = [&](CLI::App* sub) {
    count(sub, "--threads", cfg.threads, "Worker threads");
  };

  auto* synth = app.add_subcommand("synth", "Generate a toy multilingual corpus with grids");
  seed(synth);
  synth->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
  synth->add_option("--utts", cfg.utterances, "Utterances per language, lang=count")
      ->capture_default_str();
  synth->add_option("--test-fraction", cfg.test_fraction, "Held-out share")
      ->check(CLI::Range(0.0, 1.0))->capture_default_str();
  synth->add_flag("--benchmark-hours", cfg.benchmark_hours,
                  "Write only a manifest matching the 10-language benchmark hours");
  synth->add_option("--min-dur", cfg.min_dur, "Shortest utterance, seconds")
      ->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--max-dur", cfg.max_dur, "Longest utterance, seconds")
      ->check(CLI::PositiveNumber)->capture_default_str();

  auto* beam = app.add_subcommand("beam", "Top-k phoneme hypotheses by CTC prefix beam search");
  beam->add_option("--in", cfg.in, "Grid JSONL")->required();
  beam->add_option("--out", cfg.out, "Output JSONL")->required();
  count(beam, "--k", cfg.k, "Hypotheses per utterance");
  count(beam, "--beam-width", cfg.beam_width, "Beam width (raised to k)");
  threads(beam);

  auto* sample = app.add_subcommand("sample", "Draw k collapsed CTC path samples per utterance");
  seed(sample);
  sample->add_option("--in", cfg.in, "Grid JSONL")->required();
  sample->add_option("--out", cfg.out, "Output JSONL")->required();
  count(sample, "--k", cfg.k, "Samples per utterance");
  sample->add_option("--temperature", cfg.temperature, "Sampling temperature")
      ->check(CLI::PositiveNumber)->capture_default_str();
  threads(sample);

  auto* score = app.add_subcommand("score", "Estimate log p(y|x) per utterance and the batch objective");
  seed(score);
  score->add_option("--in", cfg.in, "Grid JSONL")->required();
  score->add_option("--manifest", cfg.manifest, "Reference manifest")->required();
  score->add_option("--scorer", cfg.scorer, "Scorer JSON")->required();
  score->add_option("--out", cfg.out, "Per-record JSONL")->required();
  score->add_option("--method", cfg.method, "Estimator")
      ->check(CLI::IsMember({"tkm", "skm", "sskm"}))->capture_default_str();
  count(score, "--k", cfg.k, "Hypotheses or samples per utterance");
  count(score, "--beam-width", cfg.beam_width, "TKM beam width");
  count(score, "--epochs", cfg.epochs, "Passes over the data");
  score->add_flag("--resample", cfg.resample, "Draw fresh samples every epoch");
  score->add_flag("--normalize-weights", cfg.normalize_weights,
                  "Renormalize TKM weights over the k hypotheses");
  threads(score);

  auto* decode = app.add_subcommand("decode", "Top-K x top-S pooled decoding");
  decode->add_option("--in", cfg.in, "Grid JSONL")->required();
  decode->add_option("--scorer", cfg.scorer, "Scorer JSON")->required();
  decode->add_option("--out", cfg.out, "Decode JSONL")->required();
  count(decode, "--k", cfg.k, "Phoneme hypotheses");
  count(decode, "--s", cfg.s, "Text candidates per hypothesis");
  count(decode, "--beam-width", cfg.beam_width, "Phoneme beam width (raised to k)");
  count(decode, "--max-len", cfg.max_len, "Maximum generated characters");
  decode->add_flag("--normalize-weights", cfg.normalize_weights,
                   "Renormalize beam scores over the k hypotheses");
  threads(decode);

  auto* augment = app.add_subcommand("augment", "Noisy-phoneme training pairs from n-best lists");
  augment->add_option("--in", cfg.in, "Grid JSONL")->required();
  augment->add_option("--manifest", cfg.manifest, "Manifest with references")->required();
  augment->add_option("--out", cfg.out, "Serialized training lines")->required();
  count(augment, "--n-best", cfg.n_best, "Hypotheses per utterance");
  count(augment, "--beam-width", cfg.beam_width, "Beam width (raised to n-best)");
  augment->add_flag("--include-clean", cfg.include_clean,
                    "Append the reference phonemes as one more pair");
  threads(augment);

  auto* balance = app.add_subcommand("balance", "Oversample languages below a target number of hours");
  seed(balance);
  balance->add_option("--in,--manifest", cfg.in, "Manifest JSONL")->required();
  balance->add_option("--out", cfg.out, "Balanced manifest JSONL")->required();
  balance->add_option("--target-hours", cfg.target_hours, "Minimum hours per language")
      ->check(CLI::PositiveNumber)->capture_default_str();
  balance->add_option("--require", cfg.required, "Languages that must be present");

  auto* train = app.add_subcommand("train-scorer", "Train the n-gram phoneme-to-grapheme scorer");
  train->add_option("--manifest", cfg.manifest, "Manifest of clean pairs");
  train->add_option("--lines", cfg.lines, "Serialized training lines");
  train->add_option("--grids", cfg.grids, "Grid JSONL whose symbols join the alphabet");
  train->add_option("--out", cfg.out, "Scorer JSON")->required();
  train->add_option("--order", cfg.order, "n-gram order")->check(CLI::Range(1, 8))
      ->capture_default_str();
  train->add_option("--window", cfg.window, "Phoneme context +-window")
      ->check(CLI::Range(0, 8))->capture_default_str();
  train->add_option("--alpha", cfg.alpha, "Additive smoothing")
      ->check(CLI::PositiveNumber)->capture_default_str();
  train->add_option("--languages", cfg.languages, "Language inventory");

  auto* eval = app.add_subcommand("eval", "WER and LID accuracy per language with averages");
  eval->add_option("--in", cfg.in, "Decode JSONL")->required();
  eval->add_option("--manifest", cfg.manifest, "Reference manifest")->required();
  eval->add_option("--hours-from", cfg.hours_from,
                   "Manifest whose original hours weight the average");
  eval->add_option("--out", cfg.out, "Report JSON")->required();
  eval->add_option("--table", cfg.table, "Also write the text table here");

  auto* selftest = app.add_subcommand("selftest", "Run the brute-force oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*synth) return CmdSynth(cfg);
    if (*beam) return CmdBeam(cfg);
    if (*sample) return CmdSample(cfg);
    if (*score) return CmdScore(cfg);
    if (*decode) return CmdDecode(cfg);
    if (*augment) return CmdAugment(cfg);
    if (*balance) return CmdBalance(cfg);
    if (*train) return CmdTrainScorer(cfg);
    if (*eval) return CmdEval(cfg);
    if (*selftest) return CmdSelftest();
  } catch (const InvalidInput& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const InvalidArgument& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
