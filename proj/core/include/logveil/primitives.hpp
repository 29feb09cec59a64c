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
#include <string>
#include <string_view>

#include "logveil/field.hpp"
#include "logveil/prf.hpp"
#include "logveil/record.hpp"

namespace logveil {

// --- addresses -------------------------------------------------------------

// Keeps the top keep_bits bits, zeroes the rest.  keep_bits outside [0, 32]
// throws std::out_of_range.  Unkeyed and lossy: distinct addresses in one
// kept prefix become indistinguishable.
Ipv4 truncate_address(Ipv4 addr, int keep_bits);

// --- the black marker -------------------------------------------------------

// Annihilates a value to its class-specific constant: addresses 0.0.0.0,
// ports 0, timestamps the epoch, counts/status 0, text "-".  Idempotent.
FieldValue black_mark(const FieldValue& value);

// --- text identities ---------------------------------------------------------

// Deterministic 128-bit token for a text identity, rendered as 32 lowercase
// hex characters.  ns separates field roles so an identical string used as,
// say, a username and a password maps to unrelated tokens.  Pass
// kLegacyNamespace to collapse roles into one shared mapping.
std::string keyed_pseudonym(std::string_view value, const KeyedPrf& prf,
                            std::string_view ns);

inline constexpr std::string_view kLegacyNamespace = "legacy";

// --- timestamps ---------------------------------------------------------------

struct ShiftedTime {
  UtcMicros value;
  bool saturated = false;  // clamped at the epoch floor
};

// Uniform offset in [-365 days, +365 days], whole seconds, drawn from the
// PRF per (key, stream_id): one stream shifts rigidly, so intervals inside
// it survive, while absolute time and cross-stream alignment do not.
// Results before the epoch clamp to 0 and are flagged.
ShiftedTime ts_shift(UtcMicros t, const KeyedPrf& prf, std::string_view stream_id);

// The offset ts_shift applies for this (key, stream), in microseconds.
std::int64_t ts_shift_offset(const KeyedPrf& prf, std::string_view stream_id);

enum class TimeUnit : std::uint8_t { Second, Minute, Hour, Day };

std::string_view to_string(TimeUnit unit) noexcept;
std::optional<TimeUnit> time_unit_from_name(std::string_view name) noexcept;

// Floors t to the unit boundary (UTC).  Negative times floor toward minus
// infinity, so the bucket rule is uniform across the epoch.
UtcMicros ts_reduce_precision(UtcMicros t, TimeUnit unit);

// Strongest timestamp level short of the black marker: every timestamp
// field in the stream is replaced by the record's rank, rendered as epoch +
// rank seconds.  Ranks order records by their first timestamp field, ties
// broken by input position, so equal timestamps keep input order.  Relative
// order survives; durations and gaps do not.  Returns the number of records
// ranked.
std::size_t ts_enumerate(LogStream& stream);

// --- ports ---------------------------------------------------------------------

// Keyed bijection over all 65536 port numbers.  Balanced 8|8-bit Feistel.
Port port_permute(Port port, const KeyedPrf& prf);

// Service-preserving variant: ports below `boundary` (well-known services)
// pass through untouched; ports at or above it are permuted among
// themselves via cycle-walking the 16-bit Feistel.  The boundary value is
// bound into the PRF labels, so different boundaries yield independent
// permutations.
Port port_bilateral(Port port, const KeyedPrf& prf, Port boundary = 1024);

}  // namespace logveil
