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

#include "logveil/schema.hpp"

#include <array>
#include <string>

namespace logveil {

namespace {

constexpr std::array<SchemaField, 9> kNetflowFields = {{
    {"start", FieldClass::Timestamp, true},
    {"end", FieldClass::Timestamp, true},
    {"srcaddr", FieldClass::Ipv4Src, true},
    {"dstaddr", FieldClass::Ipv4Dst, true},
    {"srcport", FieldClass::PortSrc, true},
    {"dstport", FieldClass::PortDst, true},
    {"proto", FieldClass::Protocol, true},
    {"packets", FieldClass::Count, true},
    {"bytes", FieldClass::Count, true},
}};

constexpr std::array<SchemaField, 3> kSyslogFields = {{
    {"timestamp", FieldClass::Timestamp, true},
    {"host", FieldClass::Hostname, true},
    {"msg", FieldClass::FreeText, true},
}};

constexpr std::array<SchemaField, 7> kClfFields = {{
    {"host", FieldClass::Ipv4Src, true},
    {"ident", FieldClass::UserId, true},
    {"authuser", FieldClass::UserId, true},
    {"time", FieldClass::Timestamp, true},
    {"request", FieldClass::FreeText, true},
    {"status", FieldClass::StatusCode, true},
    {"bytes", FieldClass::Count, true},
}};

constexpr std::array<SchemaField, 7> kIptablesFields = {{
    {"timestamp", FieldClass::Timestamp, true},
    {"host", FieldClass::Hostname, true},
    {"src", FieldClass::Ipv4Src, true},
    {"dst", FieldClass::Ipv4Dst, true},
    {"spt", FieldClass::PortSrc, false},
    {"dpt", FieldClass::PortDst, false},
    {"proto", FieldClass::Protocol, false},
}};

constexpr std::array<Schema, 4> kSchemas = {{
    {"netflow", kNetflowFields, TimestampStyle::EpochMicros},
    {"syslog", kSyslogFields, TimestampStyle::BsdSyslog},
    {"clf", kClfFields, TimestampStyle::ClfBracket},
    {"iptables", kIptablesFields, TimestampStyle::BsdSyslog},
}};

}  // namespace

const Schema* find_schema(std::string_view id) noexcept {
  for (const auto& s : kSchemas) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<std::string_view> schema_ids() {
  std::vector<std::string_view> out;
  out.reserve(kSchemas.size());
  for (const auto& s : kSchemas) out.push_back(s.id);
  return out;
}

FieldClass classify_field(std::string_view schema_id, std::string_view field) {
  const Schema* schema = find_schema(schema_id);
  if (schema == nullptr) {
    throw SchemaError("unknown schema: " + std::string(schema_id));
  }
  for (const auto& f : schema->fields) {
    if (f.name == field) return f.cls;
  }
  throw SchemaError("unknown field '" + std::string(field) + "' in schema " +
                    std::string(schema_id));
}

}  // namespace logveil
