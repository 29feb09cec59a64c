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

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "logveil/profile.hpp"
#include "logveil/record.hpp"

namespace logveil {

std::string xml_escape(std::string_view text);

// Interchange rendering: one <log schema="..."> element, <record n="..."> (1-based)
// children in stream order, each field as
//   <field name="..." class="..." level="...">value</field>
// with the level taken from the profile that produced the stream.  Values
// use canonical renderings (dotted quad, decimal, epoch micros).
void write_stream_xml(std::ostream& out, const LogStream& stream, const Profile& profile);

// Multiple streams need a single document element; they are wrapped in
// <logs> (a lone stream keeps <log> as the root).
void write_streams_xml(std::ostream& out, std::span<const LogStream> streams,
                       const Profile& profile);

}  // namespace logveil
