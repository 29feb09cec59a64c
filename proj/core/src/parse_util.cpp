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

#include "parse_util.hpp"

#include "calendar.hpp"

namespace logveil::detail {

namespace {

constexpr std::int64_t kMicros = 1'000'000;

// Seconds cap such that seconds * 1e6 stays inside int64.
constexpr std::uint64_t kMaxEpochSeconds = 9'223'372'036'854ULL;

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

// Fixed-width two-digit read; -1 on malformed input.
int two_digits(std::string_view t, std::size_t pos) noexcept {
  if (pos + 2 > t.size() || !is_digit(t[pos]) || !is_digit(t[pos + 1])) return -1;
  return (t[pos] - '0') * 10 + (t[pos + 1] - '0');
}

}  // namespace

std::optional<std::uint64_t> scan_u64(std::string_view text, std::uint64_t max) {
  if (text.empty() || text.size() > 20) return std::nullopt;
  std::uint64_t value = 0;
  for (char c : text) {
    if (!is_digit(c)) return std::nullopt;
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (max - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
  }
  return value;
}

std::optional<std::int64_t> parse_epoch_micros(std::string_view text) {
  const auto dot = text.find('.');
  const std::string_view whole = dot == std::string_view::npos ? text : text.substr(0, dot);
  const auto seconds = scan_u64(whole, kMaxEpochSeconds);
  if (!seconds) return std::nullopt;

  std::int64_t micros = static_cast<std::int64_t>(*seconds) * kMicros;
  if (dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 6) return std::nullopt;
    const auto value = scan_u64(frac, 999'999);
    if (!value) return std::nullopt;
    std::int64_t scaled = static_cast<std::int64_t>(*value);
    for (std::size_t i = frac.size(); i < 6; ++i) scaled *= 10;
    micros += scaled;
  }
  return micros;
}

std::optional<std::int64_t> parse_bsd_time(std::string_view text, int reference_year,
                                           std::size_t& consumed) {
  if (text.size() < 4) return std::nullopt;
  const unsigned month = month_from_name(text.substr(0, 3));
  if (month == 0 || text[3] != ' ') return std::nullopt;

  // Day: " d", "dd", or a bare "d " single digit.
  std::size_t pos = 4;
  unsigned day = 0;
  if (pos < text.size() && text[pos] == ' ') {
    ++pos;
    if (pos >= text.size() || !is_digit(text[pos])) return std::nullopt;
    day = static_cast<unsigned>(text[pos] - '0');
    ++pos;
  } else {
    if (pos >= text.size() || !is_digit(text[pos])) return std::nullopt;
    day = static_cast<unsigned>(text[pos] - '0');
    ++pos;
    if (pos < text.size() && is_digit(text[pos])) {
      day = day * 10 + static_cast<unsigned>(text[pos] - '0');
      ++pos;
    }
  }
  if (day < 1 || day > days_in_month(reference_year, month)) return std::nullopt;

  if (pos >= text.size() || text[pos] != ' ') return std::nullopt;
  ++pos;
  const int hh = two_digits(text, pos);
  const int mm = pos + 3 <= text.size() && text[pos + 2] == ':' ? two_digits(text, pos + 3) : -1;
  const int ss = pos + 6 <= text.size() && text[pos + 5] == ':' ? two_digits(text, pos + 6) : -1;
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 59) return std::nullopt;
  pos += 8;

  consumed = pos;
  const std::int64_t days = days_from_civil(reference_year, month, day);
  return ((days * 86400) + hh * 3600 + mm * 60 + ss) * kMicros;
}

std::optional<std::int64_t> parse_clf_time(std::string_view t) {
  // dd/Mon/yyyy:hh:mm:ss +hhmm
  if (t.size() != 26) return std::nullopt;
  const int day = two_digits(t, 0);
  if (day < 0 || t[2] != '/') return std::nullopt;
  const unsigned month = month_from_name(t.substr(3, 3));
  if (month == 0 || t[6] != '/') return std::nullopt;
  int year = 0;
  for (std::size_t i = 7; i < 11; ++i) {
    if (!is_digit(t[i])) return std::nullopt;
    year = year * 10 + (t[i] - '0');
  }
  if (t[11] != ':') return std::nullopt;
  const int hh = two_digits(t, 12);
  const int mm = t[14] == ':' ? two_digits(t, 15) : -1;
  const int ss = t[17] == ':' ? two_digits(t, 18) : -1;
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 59) return std::nullopt;
  if (t[20] != ' ') return std::nullopt;
  const char sign = t[21];
  if (sign != '+' && sign != '-') return std::nullopt;
  const int zh = two_digits(t, 22);
  const int zm = two_digits(t, 24);
  if (zh < 0 || zh > 23 || zm < 0 || zm > 59) return std::nullopt;
  if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, month)) {
    return std::nullopt;
  }

  const std::int64_t days = days_from_civil(year, month, static_cast<unsigned>(day));
  std::int64_t local = (days * 86400) + hh * 3600 + mm * 60 + ss;
  const std::int64_t offset = (zh * 3600 + zm * 60) * (sign == '-' ? -1 : 1);
  return (local - offset) * kMicros;
}

}  // namespace logveil::detail
