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

// Line-delimited JSON formats.
//
//   grid      {"id": str, "symbols": [str, ...], "logp": [[float, ...], ...]}
//             symbols exclude the blank, which is column 0 of every row.
//             Natural-log values; null stands for log(0).
//   manifest  {"id": str, "lang": str, "dur_sec": float,
//              "phonemes": [str, ...], "text": str}
//             plus "rep": int on oversampled copies.
//   decode    {"id": str, "lid": str, "text": str,
//              "pool": [{"lid": str, "text": str, "logp": float}, ...]}

#ifndef P2G_IO_H_
#define P2G_IO_H_

#include <functional>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "p2g/common.h"
#include "p2g/ctc.h"
#include "p2g/datapipe.h"
#include "p2g/decoder.h"

namespace p2g {

// Malformed line in an input file. what() reads "source:line: message".
class ParseError : public InvalidInput {
 public:
  ParseError(std::string_view source, std::size_t line,
             const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Calls `fn(line, line_number)` for every non-blank line. Exceptions thrown
// by `fn` are rethrown as ParseError tagged with source and line.
void ForEachLine(std::istream& in, std::string_view source,
                 const std::function<void(const std::string&, std::size_t)>& fn);

PosteriorGrid ParseGridLine(const std::string& line, bool renormalize = false);
std::string GridToJson(const PosteriorGrid& grid);
std::vector<PosteriorGrid> ReadGrids(std::istream& in, std::string_view source,
                                     bool renormalize = false);

UtteranceRecord ParseRecordLine(const std::string& line);
std::string RecordToJson(const UtteranceRecord& record);
CorpusManifest ReadManifest(std::istream& in, std::string_view source);
std::string ManifestToJsonl(const CorpusManifest& manifest);

struct DecodeLine {
  std::string id;
  DecodeResult result;
};
DecodeLine ParseDecodeLine(const std::string& line);
std::string DecodeToJson(const std::string& id, const DecodeResult& result);
std::vector<DecodeLine> ReadDecodeLines(std::istream& in,
                                        std::string_view source);

std::vector<TrainingLine> ReadTrainingLines(std::istream& in,
                                            std::string_view source);

}  // namespace p2g

#endif  // P2G_IO_H_
