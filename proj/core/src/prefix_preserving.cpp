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

#include "logveil/prefix_preserving.hpp"

#include "feistel.hpp"

namespace logveil {

Ipv4 PrefixPreservingPermutation::anonymize(Ipv4 addr) const {
  const std::uint32_t x = addr.bits;
  std::uint32_t flips = 0;
  for (int i = 1; i <= 32; ++i) {
    const int plen = i - 1;
    // Left-aligned prefix bits; the length byte disambiguates prefixes that
    // pad to the same 32-bit block.
    const std::uint32_t mask = plen == 0 ? 0u : 0xffffffffu << (32 - plen);
    const std::uint32_t prefix = x & mask;
    const std::uint8_t payload[5] = {
        static_cast<std::uint8_t>(plen),
        static_cast<std::uint8_t>(prefix >> 24),
        static_cast<std::uint8_t>(prefix >> 16),
        static_cast<std::uint8_t>(prefix >> 8),
        static_cast<std::uint8_t>(prefix),
    };
    const auto mac = prf_->eval_labeled("ip-pp", payload);
    flips = (flips << 1) | (mac[31] & 1u);
  }
  return Ipv4{x ^ flips};
}

Ipv4 address_permute(Ipv4 addr, const KeyedPrf& prf) {
  return Ipv4{detail::feistel32(addr.bits, prf, "ip-perm")};
}

}  // namespace logveil
