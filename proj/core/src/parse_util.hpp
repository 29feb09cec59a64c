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

#include <cstdint>
#include <optional>
#include <string_view>

namespace logveil::detail {

// All-digit unsigned parse with an inclusive cap; no sign, no whitespace.
std::optional<std::uint64_t> scan_u64(std::string_view text, std::uint64_t max);

// Epoch seconds with an optional '.' fraction of 1..6 digits, as micros.
std::optional<std::int64_t> parse_epoch_micros(std::string_view text);

// "Mmm [d]d hh:mm:ss" at the start of `text` with the day space- or
// zero-padded.  On success returns micros (year from reference_year) and
// sets `consumed` to the timestamp's byte length.
std::optional<std::int64_t> parse_bsd_time(std::string_view text, int reference_year,
                                           std::size_t& consumed);

// "dd/Mon/yyyy:hh:mm:ss +hhmm" (a CLF bracket body), offset applied to UTC.
std::optional<std::int64_t> parse_clf_time(std::string_view text);

}  // namespace logveil::detail
