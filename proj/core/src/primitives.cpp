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

#include "logveil/primitives.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "feistel.hpp"

namespace logveil {

Ipv4 truncate_address(Ipv4 addr, int keep_bits) {
  if (keep_bits < 0 || keep_bits > 32) {
    throw std::out_of_range("truncate_address: keep_bits must be in [0, 32]");
  }
  if (keep_bits == 0) return Ipv4{0};
  const std::uint32_t mask = 0xffffffffu << (32 - keep_bits);
  return Ipv4{addr.bits & mask};
}

FieldValue black_mark(const FieldValue& value) {
  switch (value.kind()) {
    case ValueKind::Address:
      return FieldValue(value.cls(), Ipv4{0});
    case ValueKind::Port:
      return FieldValue(value.cls(), Port{0});
    case ValueKind::Time:
      return FieldValue(value.cls(), UtcMicros{0});
    case ValueKind::Text:
      return FieldValue(value.cls(), std::string("-"));
    case ValueKind::Count:
      return FieldValue(value.cls(), std::uint64_t{0});
  }
  return value;  // unreachable
}

std::string keyed_pseudonym(std::string_view value, const KeyedPrf& prf,
                            std::string_view ns) {
  std::vector<std::uint8_t> payload;
  payload.reserve(ns.size() + 1 + value.size());
  payload.insert(payload.end(), ns.begin(), ns.end());
  payload.push_back(0x00);
  payload.insert(payload.end(), value.begin(), value.end());
  const auto mac = prf.eval_labeled("pseudonym", payload);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(32);
  for (int i = 0; i < 16; ++i) {
    out.push_back(kHex[mac[static_cast<std::size_t>(i)] >> 4]);
    out.push_back(kHex[mac[static_cast<std::size_t>(i)] & 0x0f]);
  }
  return out;
}

namespace {

constexpr std::int64_t kShiftBoundSeconds = 365LL * 86400;  // one year

}  // namespace

std::int64_t ts_shift_offset(const KeyedPrf& prf, std::string_view stream_id) {
  const auto payload = std::span(
      reinterpret_cast<const std::uint8_t*>(stream_id.data()), stream_id.size());
  const std::uint64_t r = prf.eval_u64("ts-shift", payload);
  // Modulo bias over a 2^64 draw is ~3e-12 here; ignored.
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(kShiftBoundSeconds) + 1;
  const std::int64_t seconds =
      static_cast<std::int64_t>(r % span) - kShiftBoundSeconds;
  return seconds * kMicrosPerSecond;
}

ShiftedTime ts_shift(UtcMicros t, const KeyedPrf& prf, std::string_view stream_id) {
  const std::int64_t offset = ts_shift_offset(prf, stream_id);
  ShiftedTime out;
  if (offset < 0 && t.count < -offset) {
    out.value = UtcMicros{0};
    out.saturated = true;
  } else if (offset > 0 &&
             t.count > std::numeric_limits<std::int64_t>::max() - offset) {
    out.value = UtcMicros{std::numeric_limits<std::int64_t>::max()};
    out.saturated = true;
  } else {
    out.value = UtcMicros{t.count + offset};
  }
  return out;
}

std::string_view to_string(TimeUnit unit) noexcept {
  switch (unit) {
    case TimeUnit::Second:
      return "second";
    case TimeUnit::Minute:
      return "minute";
    case TimeUnit::Hour:
      return "hour";
    case TimeUnit::Day:
      return "day";
  }
  return "hour";
}

std::optional<TimeUnit> time_unit_from_name(std::string_view name) noexcept {
  if (name == "second") return TimeUnit::Second;
  if (name == "minute") return TimeUnit::Minute;
  if (name == "hour") return TimeUnit::Hour;
  if (name == "day") return TimeUnit::Day;
  return std::nullopt;
}

UtcMicros ts_reduce_precision(UtcMicros t, TimeUnit unit) {
  std::int64_t size = kMicrosPerSecond;
  switch (unit) {
    case TimeUnit::Second:
      size = kMicrosPerSecond;
      break;
    case TimeUnit::Minute:
      size = 60 * kMicrosPerSecond;
      break;
    case TimeUnit::Hour:
      size = 3600 * kMicrosPerSecond;
      break;
    case TimeUnit::Day:
      size = 86400 * kMicrosPerSecond;
      break;
  }
  std::int64_t q = t.count / size;
  if (t.count % size != 0 && t.count < 0) --q;  // floor, not truncation
  return UtcMicros{q * size};
}

std::size_t ts_enumerate(LogStream& stream) {
  // Rank records by their first timestamp field; stable sort keeps input
  // order for ties.
  std::vector<std::size_t> ranked;
  std::vector<UtcMicros> primary(stream.records.size());
  for (std::size_t i = 0; i < stream.records.size(); ++i) {
    const LogRecord& rec = stream.records[i];
    for (std::size_t j = 0; j < rec.size(); ++j) {
      if (rec.field(j).value.kind() == ValueKind::Time) {
        primary[i] = rec.field(j).value.time();
        ranked.push_back(i);
        break;
      }
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) { return primary[a] < primary[b]; });

  for (std::size_t pos = 0; pos < ranked.size(); ++pos) {
    LogRecord& rec = stream.records[ranked[pos]];
    const auto rank_time =
        UtcMicros{static_cast<std::int64_t>(pos + 1) * kMicrosPerSecond};
    for (std::size_t j = 0; j < rec.size(); ++j) {
      if (rec.field(j).value.kind() == ValueKind::Time) {
        rec.set_value(j, FieldValue(rec.field(j).value.cls(), rank_time));
      }
    }
  }
  return ranked.size();
}

Port port_permute(Port port, const KeyedPrf& prf) {
  return detail::feistel16(port, prf, "port-perm");
}

Port port_bilateral(Port port, const KeyedPrf& prf, Port boundary) {
  if (port < boundary) return port;
  // Cycle-walk the full 16-bit permutation: starting from the port, apply
  // until the image lands back in [boundary, 65536).  Restricting a
  // bijection this way is itself a bijection on the subdomain.
  std::uint16_t v = port;
  for (int steps = 0; steps <= 0x10000; ++steps) {
    v = detail::feistel16(v, prf, "port-walk", boundary);
    if (v >= boundary) return v;
  }
  throw std::logic_error("port_bilateral: cycle walk failed to terminate");
}

}  // namespace logveil
