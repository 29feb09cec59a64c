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

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "logveil/record.hpp"
#include "logveil/schema.hpp"

namespace logveil {

struct RejectedLine {
  std::string line;
  std::string reason;  // short stable token, e.g. "port out of range"
};

// Result of parsing one line: a record or a rejection, never both.
class ParseOutcome {
 public:
  static ParseOutcome success(LogRecord record) {
    return ParseOutcome(std::move(record));
  }
  static ParseOutcome reject(std::string_view line, std::string reason) {
    return ParseOutcome(RejectedLine{std::string(line), std::move(reason)});
  }

  bool ok() const noexcept { return std::holds_alternative<LogRecord>(v_); }
  const LogRecord& record() const { return std::get<LogRecord>(v_); }
  LogRecord&& take_record() { return std::get<LogRecord>(std::move(v_)); }
  const RejectedLine& rejected() const { return std::get<RejectedLine>(v_); }

 private:
  explicit ParseOutcome(std::variant<LogRecord, RejectedLine> v) : v_(std::move(v)) {}
  std::variant<LogRecord, RejectedLine> v_;
};

struct ParseOptions {
  // Year assumed for timestamp formats that omit it (BSD syslog).  The
  // default is a leap year so Feb 29 lines stay parseable.
  int reference_year = 2000;
};

// "start,end,srcaddr,dstaddr,srcport,dstport,proto,packets,bytes", times as
// epoch seconds with optional fraction (up to microseconds).
ParseOutcome parse_netflow(std::string_view line);

// "Mmm [d]d hh:mm:ss host msg".  An RFC 3164 "<PRI>" prefix is tolerated
// and carried through as raw template bytes.
ParseOutcome parse_syslog(std::string_view line, const ParseOptions& opt = {});

// Common log format:
// host ident authuser [dd/Mon/yyyy:hh:mm:ss zzzz] "request" status bytes.
// A host that is not a dotted quad is classified hostname instead of
// ipv4-src; a "-" byte count is read as zero.
ParseOutcome parse_clf(std::string_view line);

// Syslog header followed by a kernel packet-filter message.  SRC= and DST=
// are required; SPT=, DPT=, PROTO= picked up when present; every other
// token stays raw template text.
ParseOutcome parse_iptables(std::string_view line, const ParseOptions& opt = {});

// Dispatch by schema id; throws SchemaError for an unknown id.
ParseOutcome parse_line(std::string_view schema, std::string_view line,
                        const ParseOptions& opt = {});

struct SerializeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Native one-line rendering.  Fields whose value still equals what the
// parser produced are emitted as their original bytes; rewritten fields are
// rendered canonically for the schema.  A record with no changed field
// round-trips byte-identically.
std::string serialize(const LogRecord& record);

enum class ParseMode : std::uint8_t { Lenient, Strict };

struct ReadResult {
  LogStream stream;
  std::vector<std::pair<std::size_t, std::string>> rejects;  // 1-based line, reason
  bool aborted = false;  // strict mode stopped at the first reject
};

// Reads newline-delimited records.  Lenient mode collects rejects and keeps
// going; strict mode stops at the first reject and sets `aborted`.
ReadResult read_stream(std::istream& in, std::string_view schema,
                       std::string_view source_label,
                       ParseMode mode = ParseMode::Lenient,
                       const ParseOptions& opt = {});

void write_stream(std::ostream& out, const LogStream& stream);

// "<line-number>\t<reason>\n" per reject.  Never contains field values, so
// it is safe to emit alongside anonymized output.
std::string reject_report(const ReadResult& result);

}  // namespace logveil
