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

#include "logveil/field.hpp"
#include "logveil/prf.hpp"

namespace logveil {

// Prefix-preserving address permutation in the canonical one-bit-feedback
// form: writing the input as bits x1..x32 (most significant first), output
// bit i is
//
//     y_i = x_i XOR lsb(F_k(x_1 .. x_{i-1}))
//
// where F_k is the keyed PRF evaluated over the i-1 bit prefix (padded into
// a fixed 4-byte block alongside its length).  Flipping each bit by a
// function of the preceding bits alone makes the map a bijection on each
// prefix length, so two addresses agree on exactly as many leading bits
// after anonymization as before: subnet structure survives, identities do
// not.
class PrefixPreservingPermutation {
 public:
  explicit PrefixPreservingPermutation(const KeyedPrf& prf) : prf_(&prf) {}

  Ipv4 anonymize(Ipv4 addr) const;

 private:
  const KeyedPrf* prf_;
};

inline Ipv4 pp_anonymize(Ipv4 addr, const KeyedPrf& prf) {
  return PrefixPreservingPermutation(prf).anonymize(addr);
}

// Keyed bijection over the full 32-bit address space with no structural
// guarantee.  Stronger than prefix preservation (no subnet leak), weaker
// than truncation for utility.  Balanced Feistel network over 16-bit halves.
Ipv4 address_permute(Ipv4 addr, const KeyedPrf& prf);

}  // namespace logveil
