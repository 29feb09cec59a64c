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

#include <bit>
#include <optional>
#include <string>

#include "logveil/record.hpp"

namespace logveil::detail {

// Flow-shaped projection of a record: first source address, destination
// address, destination port, and timestamp fields, rendered.
struct FlowView {
  std::optional<std::string> src;
  std::optional<std::string> dst;
  std::optional<Port> dst_port;
  std::optional<UtcMicros> time;
};

FlowView flow_view(const LogRecord& rec);

// Text classes that can carry an identity (protocol names are vocabulary,
// not identity).
constexpr bool is_text_identity(FieldClass cls) noexcept {
  return cls == FieldClass::Hostname || cls == FieldClass::UserId ||
         cls == FieldClass::FreeText || cls == FieldClass::Opaque;
}

// Identity spaces are kind-wide: an address pair recorded under ipv4-dst
// answers queries about ipv4-src too.
constexpr bool same_identity_space(FieldClass a, FieldClass b) noexcept {
  if (value_kind_of(a) != value_kind_of(b)) return false;
  if (value_kind_of(a) == ValueKind::Text) {
    return is_text_identity(a) && is_text_identity(b);
  }
  return true;
}

// Annihilation constants: a claim about one of these binds to nothing.
bool is_black_value(ValueKind kind, std::string_view rendered) noexcept;

constexpr int lcp32(std::uint32_t a, std::uint32_t b) noexcept {
  return a == b ? 32 : std::countl_zero(a ^ b);
}

}  // namespace logveil::detail
