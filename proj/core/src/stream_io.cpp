// Copyright 2026 The logveil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <istream>
#include <ostream>

#include "logveil/parsers.hpp"

namespace logveil {

ReadResult read_stream(std::istream& in, std::string_view schema,
                       std::string_view source_label, ParseMode mode,
                       const ParseOptions& opt) {
  ReadResult result;
  result.stream.schema = std::string(schema);
  result.stream.source_label = std::string(source_label);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ParseOutcome outcome = parse_line(schema, line, opt);
    if (outcome.ok()) {
      result.stream.records.push_back(outcome.take_record());
    } else {
      result.rejects.emplace_back(line_no, outcome.rejected().reason);
      if (mode == ParseMode::Strict) {
        result.aborted = true;
        break;
      }
    }
  }

  // Capture interval from the first timestamp field of each record.
  std::optional<UtcMicros> lo, hi;
  for (const LogRecord& rec : result.stream.records) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
      if (rec.field(i).value.kind() == ValueKind::Time) {
        const UtcMicros t = rec.field(i).value.time();
        if (!lo || t < *lo) lo = t;
        if (!hi || *hi < t) hi = t;
        break;
      }
    }
  }
  if (lo) result.stream.capture_interval = std::make_pair(*lo, *hi);
  return result;
}

void write_stream(std::ostream& out, const LogStream& stream) {
  for (const LogRecord& rec : stream.records) {
    out << serialize(rec) << '\n';
  }
}

std::string reject_report(const ReadResult& result) {
  std::string out;
  for (const auto& [line_no, reason] : result.rejects) {
    out += std::to_string(line_no);
    out += '\t';
    out += reason;
    out += '\n';
  }
  return out;
}

}  // namespace logveil
