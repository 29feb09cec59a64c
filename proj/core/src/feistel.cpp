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

#include "feistel.hpp"

namespace logveil::detail {

std::uint16_t feistel16(std::uint16_t value, const KeyedPrf& prf,
                        std::string_view label, std::uint16_t tweak) {
  std::uint32_t l = value >> 8;
  std::uint32_t r = value & 0xff;
  for (int round = 0; round < kFeistelRounds16; ++round) {
    const std::uint8_t payload[4] = {
        static_cast<std::uint8_t>(tweak >> 8),
        static_cast<std::uint8_t>(tweak),
        static_cast<std::uint8_t>(round),
        static_cast<std::uint8_t>(r),
    };
    const std::uint32_t f = prf.eval_labeled(label, payload)[31];
    const std::uint32_t next = l ^ f;
    l = r;
    r = next & 0xff;
  }
  return static_cast<std::uint16_t>((l << 8) | r);
}

std::uint32_t feistel32(std::uint32_t value, const KeyedPrf& prf,
                        std::string_view label) {
  std::uint32_t l = value >> 16;
  std::uint32_t r = value & 0xffff;
  for (int round = 0; round < kFeistelRounds32; ++round) {
    const std::uint8_t payload[3] = {
        static_cast<std::uint8_t>(round),
        static_cast<std::uint8_t>(r >> 8),
        static_cast<std::uint8_t>(r),
    };
    const auto mac = prf.eval_labeled(label, payload);
    const std::uint32_t f = (static_cast<std::uint32_t>(mac[30]) << 8) | mac[31];
    const std::uint32_t next = (l ^ f) & 0xffff;
    l = r;
    r = next;
  }
  return (l << 16) | r;
}

}  // namespace logveil::detail
