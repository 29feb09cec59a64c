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

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "logveil/field.hpp"

namespace logveil {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// How a schema prints its timestamp fields when a value has been rewritten
// and the raw bytes can no longer be spliced through.
enum class TimestampStyle : std::uint8_t {
  EpochMicros,   // "1086100000.000000"
  BsdSyslog,     // "Jun  1 12:34:56" (year implied)
  ClfBracket,    // "01/Jun/2004:12:00:00 +0000"
};

struct SchemaField {
  std::string_view name;
  FieldClass cls;
  bool required = true;
};

struct Schema {
  std::string_view id;
  std::span<const SchemaField> fields;
  TimestampStyle ts_style;
};

// Known schema ids: "netflow", "syslog", "clf", "iptables".
const Schema* find_schema(std::string_view id) noexcept;
std::vector<std::string_view> schema_ids();

// Class of a named field under a schema.  Throws SchemaError for an unknown
// schema or field name.  Note: clf "host" is classified ipv4-src here; the
// parser downgrades an individual value to hostname when it is not a
// dotted quad.
FieldClass classify_field(std::string_view schema_id, std::string_view field);

}  // namespace logveil
