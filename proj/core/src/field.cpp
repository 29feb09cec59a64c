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

#include "logveil/field.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace logveil {

namespace {

struct ClassName {
  FieldClass cls;
  std::string_view name;
};

constexpr std::array<ClassName, kFieldClassCount> kClassNames = {{
    {FieldClass::Ipv4Src, "ipv4-src"},
    {FieldClass::Ipv4Dst, "ipv4-dst"},
    {FieldClass::Ipv4Other, "ipv4-other"},
    {FieldClass::PortSrc, "port-src"},
    {FieldClass::PortDst, "port-dst"},
    {FieldClass::Timestamp, "timestamp"},
    {FieldClass::Hostname, "hostname"},
    {FieldClass::UserId, "user-id"},
    {FieldClass::Protocol, "protocol"},
    {FieldClass::Count, "count"},
    {FieldClass::StatusCode, "status-code"},
    {FieldClass::FreeText, "free-text"},
    {FieldClass::Opaque, "opaque"},
}};

}  // namespace

std::string_view to_string(FieldClass cls) noexcept {
  for (const auto& entry : kClassNames) {
    if (entry.cls == cls) return entry.name;
  }
  return "unknown";
}

std::optional<FieldClass> field_class_from_name(std::string_view name) noexcept {
  for (const auto& entry : kClassNames) {
    if (entry.name == name) return entry.cls;
  }
  return std::nullopt;
}

std::string format_ipv4(Ipv4 addr) {
  char buf[16];
  const auto v = addr.bits;
  const int n = std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", (v >> 24) & 0xff,
                              (v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::optional<Ipv4> parse_ipv4(std::string_view text) noexcept {
  std::uint32_t bits = 0;
  const char* p = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    if (octet > 0) {
      if (p == end || *p != '.') return std::nullopt;
      ++p;
    }
    if (p == end || *p < '0' || *p > '9') return std::nullopt;
    unsigned value = 0;
    int digits = 0;
    while (p != end && *p >= '0' && *p <= '9') {
      value = value * 10 + static_cast<unsigned>(*p - '0');
      if (++digits > 3 || value > 255) return std::nullopt;
      ++p;
    }
    bits = (bits << 8) | value;
  }
  if (p != end) return std::nullopt;
  return Ipv4{bits};
}

namespace {

void require_kind(FieldClass cls, ValueKind wanted) {
  if (value_kind_of(cls) != wanted) {
    throw std::invalid_argument(std::string("field class ") +
                                std::string(to_string(cls)) +
                                " does not carry this payload kind");
  }
}

}  // namespace

FieldValue::FieldValue(FieldClass cls, Ipv4 address) : cls_(cls), payload_(address) {
  require_kind(cls, ValueKind::Address);
}

FieldValue::FieldValue(FieldClass cls, Port port) : cls_(cls), payload_(port) {
  require_kind(cls, ValueKind::Port);
}

FieldValue::FieldValue(FieldClass cls, UtcMicros time) : cls_(cls), payload_(time) {
  require_kind(cls, ValueKind::Time);
}

FieldValue::FieldValue(FieldClass cls, std::string text)
    : cls_(cls), payload_(std::move(text)) {
  require_kind(cls, ValueKind::Text);
}

FieldValue::FieldValue(FieldClass cls, std::uint64_t count) : cls_(cls), payload_(count) {
  require_kind(cls, ValueKind::Count);
}

std::string FieldValue::render() const {
  switch (kind()) {
    case ValueKind::Address:
      return format_ipv4(address());
    case ValueKind::Port:
      return std::to_string(port());
    case ValueKind::Time: {
      // Epoch seconds with microsecond fraction, sign carried on seconds.
      const std::int64_t us = time().count;
      const std::int64_t abs = us < 0 ? -us : us;
      char buf[40];
      std::snprintf(buf, sizeof buf, "%s%lld.%06lld", us < 0 ? "-" : "",
                    static_cast<long long>(abs / kMicrosPerSecond),
                    static_cast<long long>(abs % kMicrosPerSecond));
      return buf;
    }
    case ValueKind::Text:
      return text();
    case ValueKind::Count:
      return std::to_string(count());
  }
  return {};
}

}  // namespace logveil
