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

#include "logveil/record.hpp"

#include <algorithm>
#include <stdexcept>

namespace logveil {

LogRecord::LogRecord(std::string schema, std::string raw_line,
                     std::vector<RecordField> fields, std::vector<FieldSpan> spans)
    : schema_(std::move(schema)),
      raw_(std::move(raw_line)),
      fields_(std::move(fields)),
      spans_(std::move(spans)) {
  if (fields_.size() != spans_.size()) {
    throw std::invalid_argument("record: field/span arity mismatch");
  }
  for (const auto& s : spans_) {
    if (s.begin > s.end || s.end > raw_.size()) {
      throw std::invalid_argument("record: span outside raw line");
    }
  }
  original_.reserve(fields_.size());
  for (const auto& f : fields_) original_.push_back(f.value);
}

std::string_view LogRecord::span_text(std::size_t i) const {
  const FieldSpan& s = spans_.at(i);
  return std::string_view(raw_).substr(s.begin, s.end - s.begin);
}

void LogRecord::set_value(std::size_t i, FieldValue value) {
  RecordField& f = fields_.at(i);
  if (value.cls() != f.value.cls()) {
    throw std::invalid_argument("record: replacement value changes field class");
  }
  f.value = std::move(value);
}

const FieldValue* LogRecord::find(std::string_view field_name) const noexcept {
  for (const auto& f : fields_) {
    if (f.name == field_name) return &f.value;
  }
  return nullptr;
}

std::optional<std::size_t> LogRecord::index_of(std::string_view field_name) const noexcept {
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (fields_[i].name == field_name) return i;
  }
  return std::nullopt;
}

bool record_equal_modulo(const LogRecord& a, const LogRecord& b,
                         std::span<const FieldClass> ignore) {
  if (a.schema() != b.schema()) {
    throw std::invalid_argument("record_equal_modulo: schema mismatch");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("record_equal_modulo: arity mismatch");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const RecordField& fa = a.field(i);
    const RecordField& fb = b.field(i);
    if (fa.name != fb.name || fa.value.cls() != fb.value.cls()) {
      throw std::invalid_argument("record_equal_modulo: field layout mismatch");
    }
    if (std::find(ignore.begin(), ignore.end(), fa.value.cls()) != ignore.end()) {
      continue;
    }
    if (!(fa.value == fb.value)) return false;
  }
  return true;
}

}  // namespace logveil
