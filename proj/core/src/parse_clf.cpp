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

namespace logveil {

ParseOutcome parse_clf(std::string_view line) {
  if (line.empty()) return ParseOutcome::reject(line, "empty");

  std::size_t pos = 0;
  const auto take_token = [&]() -> std::optional<FieldSpan> {
    const std::size_t begin = pos;
    while (pos < line.size() && line[pos] != ' ') ++pos;
    if (pos == begin) return std::nullopt;
    return FieldSpan{begin, pos};
  };
  const auto expect_space = [&]() -> bool {
    if (pos < line.size() && line[pos] == ' ') {
      ++pos;
      return true;
    }
    return false;
  };

  const auto host = take_token();
  if (!host || !expect_space()) return ParseOutcome::reject(line, "wrong column count");
  const auto ident = take_token();
  if (!ident || !expect_space()) return ParseOutcome::reject(line, "wrong column count");
  const auto authuser = take_token();
  if (!authuser || !expect_space()) return ParseOutcome::reject(line, "wrong column count");

  if (pos >= line.size() || line[pos] != '[') {
    return ParseOutcome::reject(line, "bad bracket structure");
  }
  const std::size_t time_begin = pos + 1;
  const auto bracket_close = line.find(']', time_begin);
  if (bracket_close == std::string_view::npos) {
    return ParseOutcome::reject(line, "bad bracket structure");
  }
  const FieldSpan time_span{time_begin, bracket_close};
  const auto micros =
      detail::parse_clf_time(line.substr(time_begin, bracket_close - time_begin));
  if (!micros) return ParseOutcome::reject(line, "bad timestamp");
  pos = bracket_close + 1;
  if (!expect_space()) return ParseOutcome::reject(line, "wrong column count");

  if (pos >= line.size() || line[pos] != '"') {
    return ParseOutcome::reject(line, "bad quote structure");
  }
  const std::size_t req_begin = pos + 1;
  const auto quote_close = line.find('"', req_begin);
  if (quote_close == std::string_view::npos) {
    return ParseOutcome::reject(line, "bad quote structure");
  }
  const FieldSpan req_span{req_begin, quote_close};
  pos = quote_close + 1;
  if (!expect_space()) return ParseOutcome::reject(line, "wrong column count");

  const auto status = take_token();
  if (!status || !expect_space()) return ParseOutcome::reject(line, "wrong column count");
  const std::string_view status_text =
      line.substr(status->begin, status->end - status->begin);
  const auto status_value = detail::scan_u64(status_text, 999);
  if (!status_value) return ParseOutcome::reject(line, "bad status");

  const auto bytes = take_token();
  if (!bytes || pos != line.size()) return ParseOutcome::reject(line, "wrong column count");
  const std::string_view bytes_text = line.substr(bytes->begin, bytes->end - bytes->begin);
  std::uint64_t bytes_value = 0;
  if (bytes_text != "-") {  // CLF prints "-" when no content was returned
    const auto parsed = detail::scan_u64(bytes_text, ~0ULL);
    if (!parsed) return ParseOutcome::reject(line, "bad count");
    bytes_value = *parsed;
  }

  const auto span_text = [&](const FieldSpan& s) {
    return std::string(line.substr(s.begin, s.end - s.begin));
  };

  // A host that is not a dotted quad is a hostname for this record even
  // though the schema slot is address-classed.
  const std::string_view host_text = line.substr(host->begin, host->end - host->begin);
  const auto host_addr = parse_ipv4(host_text);
  FieldValue host_value =
      host_addr ? FieldValue(FieldClass::Ipv4Src, *host_addr)
                : FieldValue(FieldClass::Hostname, std::string(host_text));

  std::vector<RecordField> fields;
  fields.reserve(7);
  fields.push_back({"host", std::move(host_value)});
  fields.push_back({"ident", FieldValue(FieldClass::UserId, span_text(*ident))});
  fields.push_back({"authuser", FieldValue(FieldClass::UserId, span_text(*authuser))});
  fields.push_back({"time", FieldValue(FieldClass::Timestamp, UtcMicros{*micros})});
  fields.push_back({"request", FieldValue(FieldClass::FreeText, span_text(req_span))});
  fields.push_back({"status", FieldValue(FieldClass::StatusCode, *status_value)});
  fields.push_back({"bytes", FieldValue(FieldClass::Count, bytes_value)});

  return ParseOutcome::success(
      LogRecord("clf", std::string(line), std::move(fields),
                {*host, *ident, *authuser, time_span, req_span, *status, *bytes}));
}

}  // namespace logveil
