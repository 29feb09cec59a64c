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
#include <string_view>

#include "logveil/prf.hpp"

namespace logveil::detail {

// Balanced Feistel networks over the PRF.  A Feistel round is a bijection
// for any round function, so these are keyed permutations of their domains
// by construction; the round count only buys PRP quality, not correctness.

inline constexpr int kFeistelRounds16 = 7;
inline constexpr int kFeistelRounds32 = 6;

// Permutation of [0, 2^16).  `tweak` is mixed into every round so distinct
// tweaks give independent permutations under one key.
std::uint16_t feistel16(std::uint16_t value, const KeyedPrf& prf,
                        std::string_view label, std::uint16_t tweak = 0);

// Permutation of [0, 2^32), 16-bit halves.
std::uint32_t feistel32(std::uint32_t value, const KeyedPrf& prf,
                        std::string_view label);

}  // namespace logveil::detail
