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

#include <array>
#include <span>
#include <string>

#include "logveil/profile.hpp"
#include "logveil/record.hpp"

namespace logveil {

struct ApplyOptions {
  unsigned workers = 1;  // 0 picks hardware concurrency
};

// What one apply_profile run did.  Counts only; never field values, so the
// report is always safe to publish next to the anonymized output.
struct AppliedProfileReport {
  std::string profile_name;
  std::string profile_digest;
  std::size_t records = 0;
  std::size_t shift_saturations = 0;  // timestamps clamped at the epoch floor
  bool sequential_stage = false;      // a whole-stream pass (enumerate) ran
  std::array<std::size_t, kFieldClassCount> transformed{};

  std::string to_text() const;
};

struct ApplyResult {
  LogStream stream;
  AppliedProfileReport report;
};

// Applies the profile's per-class levels to every record.  Deterministic:
// for a fixed (input, profile, keys), the output is byte-identical no
// matter the worker count; records are transformed independently and the
// only order-sensitive primitive (timestamp enumeration) runs as a
// deterministic whole-stream stage afterwards.
//
// Throws KeyError when an assignment references a key the chain lacks.
ApplyResult apply_profile(const LogStream& input, const Profile& profile,
                          const KeyChain& keys, const ApplyOptions& options = {});

// Verifies the scope promise over parallel raw/anonymized stream sets
// (aligned record-for-record): under cross-log scope every identity must
// map to one pseudonym in all streams; under per-stream scope identities
// shared between streams must not share pseudonyms.  Throws
// std::invalid_argument when the stream sets do not line up.
bool check_consistency(std::span<const LogStream> raw,
                       std::span<const LogStream> anonymized,
                       const Profile& profile);

}  // namespace logveil
