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

#include <optional>
#include <string>
#include <string_view>

#include "logveil/record.hpp"

namespace logveil::detail {

// Shared "Mmm dd hh:mm:ss host" front half of syslog-framed formats.
struct SyslogHeader {
  UtcMicros time;
  FieldSpan ts_span;
  FieldSpan host_span;
  std::size_t after = 0;  // first byte past the hostname
};

std::optional<SyslogHeader> scan_syslog_header(std::string_view line, int reference_year,
                                               std::string* reason);

}  // namespace logveil::detail
