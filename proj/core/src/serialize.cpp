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

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "calendar.hpp"
#include "logveil/parsers.hpp"

namespace logveil {

namespace {

// Whole-second civil rendering; every value a transform can produce is
// second-aligned, and untouched values are spliced from raw bytes instead
// of passing through here.
detail::CivilDate civil_of(UtcMicros t, int* hh, int* mm, int* ss) {
  std::int64_t secs = t.count / kMicrosPerSecond;
  if (t.count % kMicrosPerSecond != 0 && t.count < 0) --secs;
  std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  *hh = static_cast<int>(rem / 3600);
  *mm = static_cast<int>((rem % 3600) / 60);
  *ss = static_cast<int>(rem % 60);
  return detail::civil_from_days(days);
}

std::string render_time(TimestampStyle style, UtcMicros t) {
  char buf[48];
  switch (style) {
    case TimestampStyle::EpochMicros: {
      const std::int64_t abs = t.count < 0 ? -t.count : t.count;
      std::snprintf(buf, sizeof buf, "%s%lld.%06lld", t.count < 0 ? "-" : "",
                    static_cast<long long>(abs / kMicrosPerSecond),
                    static_cast<long long>(abs % kMicrosPerSecond));
      return buf;
    }
    case TimestampStyle::BsdSyslog: {
      int hh, mm, ss;
      const auto date = civil_of(t, &hh, &mm, &ss);
      std::snprintf(buf, sizeof buf, "%s %2u %02d:%02d:%02d",
                    std::string(detail::kMonthNames[date.month - 1]).c_str(),
                    date.day, hh, mm, ss);
      return buf;
    }
    case TimestampStyle::ClfBracket: {
      int hh, mm, ss;
      const auto date = civil_of(t, &hh, &mm, &ss);
      std::snprintf(buf, sizeof buf, "%02u/%s/%04lld:%02d:%02d:%02d +0000", date.day,
                    std::string(detail::kMonthNames[date.month - 1]).c_str(),
                    static_cast<long long>(date.year), hh, mm, ss);
      return buf;
    }
  }
  return {};
}

std::string render_field(const Schema& schema, const FieldValue& value) {
  if (value.kind() == ValueKind::Time) return render_time(schema.ts_style, value.time());
  return value.render();
}

}  // namespace

std::string serialize(const LogRecord& record) {
  const Schema* schema = find_schema(record.schema());
  if (schema == nullptr) {
    throw SerializeError("unknown schema: " + record.schema());
  }

  // Spans may appear in any raw-line order (keyed formats); emit them
  // position-sorted with the untouched template bytes in between.
  std::vector<std::size_t> order(record.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return record.span(a).begin < record.span(b).begin;
  });

  const std::string& raw = record.raw_line();
  std::string out;
  out.reserve(raw.size() + 16);
  std::size_t pos = 0;
  for (const std::size_t i : order) {
    const FieldSpan& s = record.span(i);
    if (s.begin < pos) throw SerializeError("overlapping field spans");
    out.append(raw, pos, s.begin - pos);
    if (record.value_changed(i)) {
      out += render_field(*schema, record.field(i).value);
    } else {
      out.append(raw, s.begin, s.end - s.begin);
    }
    pos = s.end;
  }
  out.append(raw, pos, raw.size() - pos);
  return out;
}

}  // namespace logveil
