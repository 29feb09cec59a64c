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

#include <array>
#include <limits>

#include "logveil/parsers.hpp"
#include "parse_util.hpp"

namespace logveil {

namespace {

constexpr std::size_t kColumns = 9;

constexpr std::array<std::string_view, kColumns> kNames = {
    "start", "end",     "srcaddr", "dstaddr", "srcport",
    "dstport", "proto", "packets", "bytes"};

}  // namespace

ParseOutcome parse_netflow(std::string_view line) {
  if (line.empty()) return ParseOutcome::reject(line, "empty");

  std::array<FieldSpan, kColumns> spans;
  std::size_t col = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (col == kColumns) return ParseOutcome::reject(line, "wrong column count");
      spans[col++] = FieldSpan{begin, i};
      begin = i + 1;
    }
  }
  if (col != kColumns) return ParseOutcome::reject(line, "wrong column count");

  const auto text_at = [&](std::size_t i) {
    return line.substr(spans[i].begin, spans[i].end - spans[i].begin);
  };

  std::vector<RecordField> fields;
  fields.reserve(kColumns);

  for (std::size_t i = 0; i < 2; ++i) {
    const auto micros = detail::parse_epoch_micros(text_at(i));
    if (!micros) return ParseOutcome::reject(line, "bad timestamp");
    fields.push_back({std::string(kNames[i]),
                      FieldValue(FieldClass::Timestamp, UtcMicros{*micros})});
  }
  for (std::size_t i = 2; i < 4; ++i) {
    const auto addr = parse_ipv4(text_at(i));
    if (!addr) return ParseOutcome::reject(line, "bad address");
    fields.push_back({std::string(kNames[i]),
                      FieldValue(i == 2 ? FieldClass::Ipv4Src : FieldClass::Ipv4Dst, *addr)});
  }
  for (std::size_t i = 4; i < 6; ++i) {
    const auto port = detail::scan_u64(text_at(i), std::numeric_limits<std::uint64_t>::max());
    if (!port) return ParseOutcome::reject(line, "bad port");
    if (*port > 65535) return ParseOutcome::reject(line, "port out of range");
    fields.push_back({std::string(kNames[i]),
                      FieldValue(i == 4 ? FieldClass::PortSrc : FieldClass::PortDst,
                                 static_cast<Port>(*port))});
  }
  if (text_at(6).empty()) return ParseOutcome::reject(line, "empty field");
  fields.push_back({std::string(kNames[6]),
                    FieldValue(FieldClass::Protocol, std::string(text_at(6)))});
  for (std::size_t i = 7; i < 9; ++i) {
    const auto count = detail::scan_u64(text_at(i), std::numeric_limits<std::uint64_t>::max());
    if (!count) return ParseOutcome::reject(line, "bad count");
    fields.push_back({std::string(kNames[i]), FieldValue(FieldClass::Count, *count)});
  }

  return ParseOutcome::success(LogRecord("netflow", std::string(line), std::move(fields),
                                         std::vector<FieldSpan>(spans.begin(), spans.end())));
}

}  // namespace logveil
