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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace logveil {

// Closed set of semantic field classes.  Anonymization policy is keyed on
// these, never on schema-specific field names.
enum class FieldClass : std::uint8_t {
  Ipv4Src,
  Ipv4Dst,
  Ipv4Other,
  PortSrc,
  PortDst,
  Timestamp,
  Hostname,
  UserId,
  Protocol,
  Count,
  StatusCode,
  FreeText,
  Opaque,
};

inline constexpr int kFieldClassCount = 13;

// Stable wire names ("ipv4-src", "user-id", ...) used by profiles, XML
// output, and ground-truth sidecars.
std::string_view to_string(FieldClass cls) noexcept;
std::optional<FieldClass> field_class_from_name(std::string_view name) noexcept;

// Payload shape a field class carries.
enum class ValueKind : std::uint8_t { Address, Port, Time, Text, Count };

constexpr ValueKind value_kind_of(FieldClass cls) noexcept {
  switch (cls) {
    case FieldClass::Ipv4Src:
    case FieldClass::Ipv4Dst:
    case FieldClass::Ipv4Other:
      return ValueKind::Address;
    case FieldClass::PortSrc:
    case FieldClass::PortDst:
      return ValueKind::Port;
    case FieldClass::Timestamp:
      return ValueKind::Time;
    case FieldClass::Hostname:
    case FieldClass::UserId:
    case FieldClass::Protocol:
    case FieldClass::FreeText:
    case FieldClass::Opaque:
      return ValueKind::Text;
    case FieldClass::Count:
    case FieldClass::StatusCode:
      return ValueKind::Count;
  }
  return ValueKind::Text;  // unreachable for valid enumerators
}

// IPv4 address held as host-order bits; bit 1 is the most significant bit.
struct Ipv4 {
  std::uint32_t bits = 0;

  friend constexpr auto operator<=>(const Ipv4&, const Ipv4&) = default;
};

std::string format_ipv4(Ipv4 addr);
std::optional<Ipv4> parse_ipv4(std::string_view text) noexcept;

using Port = std::uint16_t;

// Microseconds since the Unix epoch, UTC, leap seconds ignored.
struct UtcMicros {
  std::int64_t count = 0;

  friend constexpr auto operator<=>(const UtcMicros&, const UtcMicros&) = default;
};

inline constexpr std::int64_t kMicrosPerSecond = 1'000'000;

// A classified, typed field payload.  The payload variant is fixed by the
// class at construction; mismatches throw std::invalid_argument.
class FieldValue {
 public:
  FieldValue(FieldClass cls, Ipv4 address);
  FieldValue(FieldClass cls, Port port);
  FieldValue(FieldClass cls, UtcMicros time);
  FieldValue(FieldClass cls, std::string text);
  FieldValue(FieldClass cls, std::uint64_t count);

  FieldClass cls() const noexcept { return cls_; }
  ValueKind kind() const noexcept { return value_kind_of(cls_); }

  // Payload accessors; throw std::bad_variant_access on kind mismatch.
  Ipv4 address() const { return std::get<Ipv4>(payload_); }
  Port port() const { return std::get<Port>(payload_); }
  UtcMicros time() const { return std::get<UtcMicros>(payload_); }
  const std::string& text() const { return std::get<std::string>(payload_); }
  std::uint64_t count() const { return std::get<std::uint64_t>(payload_); }

  // Canonical text rendering (dotted quad, decimal, epoch micros, raw text).
  // Schema-aware timestamp shapes live with the serializers, not here.
  std::string render() const;

  friend bool operator==(const FieldValue&, const FieldValue&) = default;

 private:
  FieldClass cls_;
  std::variant<Ipv4, Port, UtcMicros, std::string, std::uint64_t> payload_;
};

}  // namespace logveil
