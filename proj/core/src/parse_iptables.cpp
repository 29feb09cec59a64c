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

#include <optional>

#include "logveil/parsers.hpp"
#include "parse_util.hpp"
#include "syslog_header.hpp"

namespace logveil {

namespace {

struct Token {
  std::string_view key;
  FieldSpan value_span;  // the bytes after '='
};

// KEY=VALUE shape with an uppercase key; anything else is template text.
std::optional<Token> match_kv(std::string_view line, std::size_t begin, std::size_t end) {
  std::size_t eq = begin;
  while (eq < end && line[eq] >= 'A' && line[eq] <= 'Z') ++eq;
  if (eq == begin || eq >= end || line[eq] != '=') return std::nullopt;
  return Token{line.substr(begin, eq - begin), FieldSpan{eq + 1, end}};
}

}  // namespace

ParseOutcome parse_iptables(std::string_view line, const ParseOptions& opt) {
  if (line.empty()) return ParseOutcome::reject(line, "empty");

  std::string reason;
  const auto header = detail::scan_syslog_header(line, opt.reference_year, &reason);
  if (!header) return ParseOutcome::reject(line, reason);

  std::optional<FieldSpan> src_span, dst_span, spt_span, dpt_span, proto_span;
  Ipv4 src{}, dst{};
  Port spt = 0, dpt = 0;

  // First occurrence of each recognized key wins; repeats and unknown
  // tokens stay raw.
  std::size_t pos = header->after;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ') ++end;
    if (end > pos) {
      if (const auto kv = match_kv(line, pos, end)) {
        const std::string_view value =
            line.substr(kv->value_span.begin, kv->value_span.end - kv->value_span.begin);
        if (kv->key == "SRC" && !src_span) {
          const auto addr = parse_ipv4(value);
          if (!addr) return ParseOutcome::reject(line, "bad address");
          src = *addr;
          src_span = kv->value_span;
        } else if (kv->key == "DST" && !dst_span) {
          const auto addr = parse_ipv4(value);
          if (!addr) return ParseOutcome::reject(line, "bad address");
          dst = *addr;
          dst_span = kv->value_span;
        } else if ((kv->key == "SPT" || kv->key == "DPT") &&
                   !(kv->key == "SPT" ? spt_span : dpt_span)) {
          const auto port = detail::scan_u64(value, ~0ULL);
          if (!port) return ParseOutcome::reject(line, "bad port");
          if (*port > 65535) return ParseOutcome::reject(line, "port out of range");
          if (kv->key == "SPT") {
            spt = static_cast<Port>(*port);
            spt_span = kv->value_span;
          } else {
            dpt = static_cast<Port>(*port);
            dpt_span = kv->value_span;
          }
        } else if (kv->key == "PROTO" && !proto_span && !value.empty()) {
          proto_span = kv->value_span;
        }
      }
    }
    pos = end;
  }

  if (!src_span) return ParseOutcome::reject(line, "missing SRC");
  if (!dst_span) return ParseOutcome::reject(line, "missing DST");

  const auto span_text = [&](const FieldSpan& s) {
    return std::string(line.substr(s.begin, s.end - s.begin));
  };

  std::vector<RecordField> fields;
  std::vector<FieldSpan> spans;
  fields.push_back({"timestamp", FieldValue(FieldClass::Timestamp, header->time)});
  spans.push_back(header->ts_span);
  fields.push_back({"host", FieldValue(FieldClass::Hostname, span_text(header->host_span))});
  spans.push_back(header->host_span);
  fields.push_back({"src", FieldValue(FieldClass::Ipv4Src, src)});
  spans.push_back(*src_span);
  fields.push_back({"dst", FieldValue(FieldClass::Ipv4Dst, dst)});
  spans.push_back(*dst_span);
  if (spt_span) {
    fields.push_back({"spt", FieldValue(FieldClass::PortSrc, spt)});
    spans.push_back(*spt_span);
  }
  if (dpt_span) {
    fields.push_back({"dpt", FieldValue(FieldClass::PortDst, dpt)});
    spans.push_back(*dpt_span);
  }
  if (proto_span) {
    fields.push_back({"proto", FieldValue(FieldClass::Protocol, span_text(*proto_span))});
    spans.push_back(*proto_span);
  }

  return ParseOutcome::success(
      LogRecord("iptables", std::string(line), std::move(fields), std::move(spans)));
}

ParseOutcome parse_line(std::string_view schema, std::string_view line,
                        const ParseOptions& opt) {
  if (schema == "netflow") return parse_netflow(line);
  if (schema == "syslog") return parse_syslog(line, opt);
  if (schema == "clf") return parse_clf(line);
  if (schema == "iptables") return parse_iptables(line, opt);
  throw SchemaError("unknown schema: " + std::string(schema));
}

}  // namespace logveil
