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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logveil/field.hpp"

namespace logveil {

struct RecordField {
  std::string name;
  FieldValue value;
};

// Byte range [begin, end) of one field inside the raw source line.
struct FieldSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// One parsed log line.  Keeps the raw line plus per-field byte spans so a
// record whose values were never touched serializes back byte-identically.
// Field order and count are fixed at construction; values are replaceable
// but a replacement must keep the original field class.
class LogRecord {
 public:
  LogRecord(std::string schema, std::string raw_line,
            std::vector<RecordField> fields, std::vector<FieldSpan> spans);

  const std::string& schema() const noexcept { return schema_; }
  const std::string& raw_line() const noexcept { return raw_; }
  std::size_t size() const noexcept { return fields_.size(); }

  const RecordField& field(std::size_t i) const { return fields_.at(i); }
  const std::vector<RecordField>& fields() const noexcept { return fields_; }
  const FieldSpan& span(std::size_t i) const { return spans_.at(i); }

  std::string_view span_text(std::size_t i) const;

  // Value the parser originally produced for field i; the baseline the
  // serializer compares against when deciding to reuse raw bytes.
  const FieldValue& original_value(std::size_t i) const { return original_.at(i); }
  bool value_changed(std::size_t i) const { return !(fields_.at(i).value == original_.at(i)); }

  // Replaces the payload of field i.  Throws std::invalid_argument if the
  // new value's class differs from the field's class.
  void set_value(std::size_t i, FieldValue value);

  const FieldValue* find(std::string_view field_name) const noexcept;
  std::optional<std::size_t> index_of(std::string_view field_name) const noexcept;

 private:
  std::string schema_;
  std::string raw_;
  std::vector<RecordField> fields_;
  std::vector<FieldValue> original_;
  std::vector<FieldSpan> spans_;
};

// An ordered sequence of same-schema records plus source metadata.
struct LogStream {
  std::string schema;
  std::string source_label;  // stream identity for per-stream keying
  std::vector<LogRecord> records;
  std::optional<std::pair<UtcMicros, UtcMicros>> capture_interval;
};

// True when a and b agree on every field except those whose class is listed
// in ignore.  Throws std::invalid_argument on schema or arity mismatch.
bool record_equal_modulo(const LogRecord& a, const LogRecord& b,
                         std::span<const FieldClass> ignore);

}  // namespace logveil
