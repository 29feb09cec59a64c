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

#include "logveil/parsers.hpp"
#include "parse_util.hpp"
#include "syslog_header.hpp"

namespace logveil {

namespace detail {

std::optional<SyslogHeader> scan_syslog_header(std::string_view line, int reference_year,
                                               std::string* reason) {
  SyslogHeader h;
  std::size_t pos = 0;

  // Optional RFC 3164 priority tag; kept as template bytes.
  if (pos < line.size() && line[pos] == '<') {
    const auto close = line.find('>', pos + 1);
    if (close != std::string_view::npos && close > pos + 1 && close <= pos + 4) {
      bool digits = true;
      for (std::size_t i = pos + 1; i < close; ++i) {
        digits = digits && line[i] >= '0' && line[i] <= '9';
      }
      if (digits) pos = close + 1;
    }
  }

  std::size_t ts_len = 0;
  const auto micros = parse_bsd_time(line.substr(pos), reference_year, ts_len);
  if (!micros) {
    *reason = "bad timestamp";
    return std::nullopt;
  }
  h.time = UtcMicros{*micros};
  h.ts_span = FieldSpan{pos, pos + ts_len};
  pos += ts_len;

  if (pos >= line.size() || line[pos] != ' ') {
    *reason = "missing hostname";
    return std::nullopt;
  }
  ++pos;
  const std::size_t host_begin = pos;
  while (pos < line.size() && line[pos] != ' ') ++pos;
  if (pos == host_begin) {
    *reason = "missing hostname";
    return std::nullopt;
  }
  h.host_span = FieldSpan{host_begin, pos};
  h.after = pos;
  return h;
}

}  // namespace detail

ParseOutcome parse_syslog(std::string_view line, const ParseOptions& opt) {
  if (line.empty()) return ParseOutcome::reject(line, "empty");

  std::string reason;
  const auto header = detail::scan_syslog_header(line, opt.reference_year, &reason);
  if (!header) return ParseOutcome::reject(line, reason);

  if (header->after >= line.size() || line[header->after] != ' ') {
    return ParseOutcome::reject(line, "missing message");
  }
  const std::size_t msg_begin = header->after + 1;
  const FieldSpan msg_span{msg_begin, line.size()};

  std::vector<RecordField> fields;
  fields.reserve(3);
  fields.push_back({"timestamp", FieldValue(FieldClass::Timestamp, header->time)});
  fields.push_back(
      {"host", FieldValue(FieldClass::Hostname,
                          std::string(line.substr(header->host_span.begin,
                                                  header->host_span.end -
                                                      header->host_span.begin)))});
  fields.push_back({"msg", FieldValue(FieldClass::FreeText,
                                      std::string(line.substr(msg_begin)))});

  return ParseOutcome::success(
      LogRecord("syslog", std::string(line), std::move(fields),
                {header->ts_span, header->host_span, msg_span}));
}

}  // namespace logveil
