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

#include <istream>
#include <ostream>
#include <stdexcept>

#include "attack_util.hpp"
#include "logveil/attack.hpp"

namespace logveil {

namespace {

std::string escape_column(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        out.push_back(c);
        break;
    }
  }
  return out;
}

std::string unescape_column(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) {
      ++i;
      switch (text[i]) {
        case 't':
          out.push_back('\t');
          break;
        case 'n':
          out.push_back('\n');
          break;
        default:
          out.push_back(text[i]);
          break;
      }
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}


}  // namespace

void GroundTruth::add(FieldClass cls, std::string raw, std::string anon) {
  std::string key;
  key.reserve(raw.size() + anon.size() + 16);
  key += to_string(cls);
  key += '\x1f';
  key += raw;
  key += '\x1f';
  key += anon;
  if (!seen_.insert(std::move(key)).second) return;
  entries_.push_back(Entry{cls, std::move(raw), std::move(anon)});
}

void GroundTruth::accumulate(const LogStream& raw, const LogStream& anonymized) {
  if (raw.records.size() != anonymized.records.size()) {
    throw std::invalid_argument("ground truth: stream sizes differ");
  }
  for (std::size_t r = 0; r < raw.records.size(); ++r) {
    const LogRecord& rr = raw.records[r];
    const LogRecord& ar = anonymized.records[r];
    if (rr.size() != ar.size()) {
      throw std::invalid_argument("ground truth: record arity differs");
    }
    for (std::size_t f = 0; f < rr.size(); ++f) {
      const FieldValue& rv = rr.field(f).value;
      const FieldValue& av = ar.field(f).value;
      switch (rv.kind()) {
        case ValueKind::Address:
        case ValueKind::Port:
          add(rv.cls(), rv.render(), av.render());
          break;
        case ValueKind::Text:
          if (detail::is_text_identity(rv.cls()) && rv.text() != "-") {
            add(rv.cls(), rv.text(), av.text());
          }
          break;
        default:
          break;
      }
    }
  }
}

GroundTruth GroundTruth::from_streams(const LogStream& raw, const LogStream& anonymized) {
  GroundTruth truth;
  truth.accumulate(raw, anonymized);
  return truth;
}

std::vector<std::string> GroundTruth::anon_of(FieldClass cls, std::string_view raw) const {
  std::vector<std::string> out;
  for (const Entry& e : entries_) {
    if (detail::same_identity_space(e.cls, cls) && e.raw == raw) {
      if (std::find(out.begin(), out.end(), e.anon) == out.end()) out.push_back(e.anon);
    }
  }
  return out;
}

std::vector<std::string> GroundTruth::raw_of(FieldClass cls, std::string_view anon) const {
  std::vector<std::string> out;
  for (const Entry& e : entries_) {
    if (detail::same_identity_space(e.cls, cls) && e.anon == anon) {
      if (std::find(out.begin(), out.end(), e.raw) == out.end()) out.push_back(e.raw);
    }
  }
  return out;
}

std::optional<MappingClaim> GroundTruth::find_raw(std::string_view raw) const {
  for (const Entry& e : entries_) {
    if (e.raw != raw) continue;
    MappingClaim claim;
    claim.cls = e.cls;
    claim.anonymized = e.anon;
    claim.raw = e.raw;
    claim.bits = 32;
    claim.source = AttackKind::KnownMapping;
    return claim;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> GroundTruth::address_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry& e : entries_) {
    if (value_kind_of(e.cls) != ValueKind::Address) continue;
    const auto pair = std::make_pair(e.raw, e.anon);
    if (std::find(out.begin(), out.end(), pair) == out.end()) out.push_back(pair);
  }
  return out;
}

void GroundTruth::write(std::ostream& out) const {
  for (const Entry& e : entries_) {
    out << escape_column(e.raw) << '\t' << escape_column(e.anon) << '\t'
        << to_string(e.cls) << '\n';
  }
}

GroundTruth GroundTruth::read(std::istream& in) {
  GroundTruth truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      throw std::runtime_error("ground truth line " + std::to_string(line_no) +
                               ": need raw<TAB>anon<TAB>class");
    }
    const auto cls = field_class_from_name(line.substr(tab2 + 1));
    if (!cls) {
      throw std::runtime_error("ground truth line " + std::to_string(line_no) +
                               ": unknown class " + line.substr(tab2 + 1));
    }
    truth.add(*cls, unescape_column(line.substr(0, tab1)),
              unescape_column(line.substr(tab1 + 1, tab2 - tab1 - 1)));
  }
  return truth;
}

}  // namespace logveil
