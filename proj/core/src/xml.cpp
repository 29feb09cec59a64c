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

#include "logveil/xml.hpp"

#include <ostream>

namespace logveil {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out.push_back(c);
        break;
    }
  }
  return out;
}

namespace {

void write_log_element(std::ostream& out, const LogStream& stream,
                       const Profile& profile, std::string_view indent) {
  out << indent << "<log schema=\"" << xml_escape(stream.schema) << "\" source=\""
      << xml_escape(stream.source_label) << "\" profile=\""
      << xml_escape(profile.digest()) << "\">\n";
  std::size_t n = 0;
  for (const LogRecord& rec : stream.records) {
    out << indent << "  <record n=\"" << ++n << "\">\n";
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const RecordField& f = rec.field(i);
      const int level = profile.assignment(f.value.cls()).level;
      out << indent << "    <field name=\"" << xml_escape(f.name) << "\" class=\""
          << to_string(f.value.cls()) << "\" level=\"" << level << "\">"
          << xml_escape(f.value.render()) << "</field>\n";
    }
    out << indent << "  </record>\n";
  }
  out << indent << "</log>\n";
}

}  // namespace

void write_stream_xml(std::ostream& out, const LogStream& stream, const Profile& profile) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  write_log_element(out, stream, profile, "");
}

void write_streams_xml(std::ostream& out, std::span<const LogStream> streams,
                       const Profile& profile) {
  if (streams.size() == 1) {
    write_stream_xml(out, streams.front(), profile);
    return;
  }
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<logs>\n";
  for (const LogStream& stream : streams) {
    write_log_element(out, stream, profile, "  ");
  }
  out << "</logs>\n";
}

}  // namespace logveil
