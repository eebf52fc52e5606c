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

#include "p2g/io.h"

#include <nlohmann/json.hpp>

namespace p2g {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json ParseObject(const std::string& line) {
  json j = json::parse(line);
  if (!j.is_object()) throw InvalidInput("expected a JSON object");
  return j;
}

double LogValue(const json& v) {
  if (v.is_null()) return kLogZero;
  if (!v.is_number()) throw InvalidInput("log-probability must be a number");
  return v.get<double>();
}

}  // namespace

ParseError::ParseError(std::string_view source, std::size_t line,
                       const std::string& message)
    : InvalidInput(std::string(source) + ":" + std::to_string(line) + ": " +
                   message),
      line_(line) {}

void ForEachLine(
    std::istream& in, std::string_view source,
    const std::function<void(const std::string&, std::size_t)>& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      fn(line, number);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, number, e.what());
    }
  }
}

PosteriorGrid ParseGridLine(const std::string& line, bool renormalize) {
  const json j = ParseObject(line);
  std::vector<std::vector<double>> rows;
  for (const auto& row : j.at("logp")) {
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(LogValue(v));
    rows.push_back(std::move(r));
  }
  return PosteriorGrid(j.at("id").get<std::string>(),
                       Alphabet(j.at("symbols").get<std::vector<std::string>>()),
                       rows, renormalize);
}

std::string GridToJson(const PosteriorGrid& grid) {
  ordered_json j;
  j["id"] = grid.utterance_id();
  j["symbols"] = grid.alphabet().symbols();
  auto rows = json::array();
  for (std::size_t t = 0; t < grid.frames(); ++t) {
    auto row = json::array();
    for (double v : grid.row(t)) {
      row.push_back(IsLogZero(v) ? json(nullptr) : json(v));
    }
    rows.push_back(std::move(row));
  }
  j["logp"] = std::move(rows);
  return j.dump();
}

std::vector<PosteriorGrid> ReadGrids(std::istream& in, std::string_view source,
                                     bool renormalize) {
  std::vector<PosteriorGrid> grids;
  ForEachLine(in, source, [&](const std::string& line, std::size_t) {
    grids.push_back(ParseGridLine(line, renormalize));
  });
  return grids;
}

UtteranceRecord ParseRecordLine(const std::string& line) {
  const json j = ParseObject(line);
  UtteranceRecord r;
  r.id = j.at("id").get<std::string>();
  r.lang = j.at("lang").get<std::string>();
  r.dur_sec = j.at("dur_sec").get<double>();
  r.phonemes = j.at("phonemes").get<std::vector<std::string>>();
  r.text = j.at("text").get<std::string>();
  if (auto it = j.find("rep"); it != j.end()) {
    r.repetition = it->get<std::uint32_t>();
  }
  ValidateRecord(r);
  return r;
}

std::string RecordToJson(const UtteranceRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["lang"] = record.lang;
  j["dur_sec"] = record.dur_sec;
  j["phonemes"] = record.phonemes;
  j["text"] = record.text;
  if (record.repetition != 0) j["rep"] = record.repetition;
  return j.dump();
}

CorpusManifest ReadManifest(std::istream& in, std::string_view source) {
  CorpusManifest manifest;
  ForEachLine(in, source, [&](const std::string& line, std::size_t) {
    manifest.records.push_back(ParseRecordLine(line));
  });
  return manifest;
}

std::string ManifestToJsonl(const CorpusManifest& manifest) {
  std::string out;
  for (const auto& r : manifest.records) {
    out += RecordToJson(r);
    out += '\n';
  }
  return out;
}

DecodeLine ParseDecodeLine(const std::string& line) {
  const json j = ParseObject(line);
  DecodeLine d;
  d.id = j.at("id").get<std::string>();
  d.result.best = {j.at("lid").get<std::string>(),
                   j.at("text").get<std::string>()};
  if (auto it = j.find("pool"); it != j.end()) {
    for (const auto& e : *it) {
      d.result.pool.push_back({{e.at("lid").get<std::string>(),
                                e.at("text").get<std::string>()},
                               LogValue(e.at("logp"))});
    }
  }
  return d;
}

std::string DecodeToJson(const std::string& id, const DecodeResult& result) {
  ordered_json j;
  j["id"] = id;
  j["lid"] = result.best.lid;
  j["text"] = result.best.text;
  auto pool = ordered_json::array();
  for (const auto& c : result.pool) {
    ordered_json e;
    e["lid"] = c.text.lid;
    e["text"] = c.text.text;
    e["logp"] = c.log_prob;
    pool.push_back(std::move(e));
  }
  j["pool"] = std::move(pool);
  return j.dump();
}

std::vector<DecodeLine> ReadDecodeLines(std::istream& in,
                                        std::string_view source) {
  std::vector<DecodeLine> out;
  ForEachLine(in, source, [&](const std::string& line, std::size_t) {
    out.push_back(ParseDecodeLine(line));
  });
  return out;
}

std::vector<TrainingLine> ReadTrainingLines(std::istream& in,
                                            std::string_view source) {
  std::vector<TrainingLine> out;
  ForEachLine(in, source, [&](const std::string& line, std::size_t) {
    out.push_back(ParseTrainingLine(line));
  });
  return out;
}

}  // namespace p2g
