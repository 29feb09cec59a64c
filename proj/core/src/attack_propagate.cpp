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

#include <algorithm>
#include <set>

#include "attack_util.hpp"
#include "logveil/attack.hpp"

namespace logveil {

namespace {

struct AddressAnchor {
  std::uint32_t anon = 0;
  std::uint32_t raw = 0;
};

// Anchors usable for bit arithmetic: full-identity address claims whose
// both sides parse as dotted quads.
std::vector<AddressAnchor> address_anchors(std::span<const MappingClaim> anchors) {
  std::vector<AddressAnchor> out;
  for (const auto& a : anchors) {
    if (value_kind_of(a.cls) != ValueKind::Address || a.bits != 32) continue;
    const auto anon = parse_ipv4(a.anonymized);
    const auto raw = parse_ipv4(a.raw);
    if (!anon || !raw) continue;
    out.push_back({anon->bits, raw->bits});
  }
  return out;
}

}  // namespace

std::vector<MappingClaim> propagate_prefix_bits(std::span<const std::string> anonymized,
                                                std::span<const MappingClaim> anchors) {
  const auto known = address_anchors(anchors);
  std::vector<MappingClaim> claims;
  if (known.empty()) return claims;

  std::set<std::uint32_t> known_anon;
  for (const auto& k : known) known_anon.insert(k.anon);

  std::set<std::uint32_t> seen;
  for (const auto& text : anonymized) {
    const auto addr = parse_ipv4(text);
    if (!addr) continue;
    if (known_anon.contains(addr->bits)) continue;  // already fully mapped
    if (!seen.insert(addr->bits).second) continue;

    const AddressAnchor* best = nullptr;
    int best_lcp = -1;
    for (const auto& k : known) {
      const int l = detail::lcp32(addr->bits, k.anon);
      if (l > best_lcp) {
        best_lcp = l;
        best = &k;
      }
    }

    // Shared anonymized prefix of length L implies the same L raw bits,
    // and the first divergent raw bit is the complement of the anchor's.
    const int bits = std::min(best_lcp + 1, 32);
    std::uint32_t raw = 0;
    if (best_lcp > 0) raw = best->raw & (~std::uint32_t{0} << (32 - best_lcp));
    if (best_lcp < 32) raw |= ~best->raw & (std::uint32_t{1} << (31 - best_lcp));

    MappingClaim claim;
    claim.cls = FieldClass::Ipv4Src;
    claim.anonymized = format_ipv4(*addr);
    claim.raw = format_ipv4(Ipv4{raw});
    claim.bits = bits;
    claim.source = AttackKind::PrefixPropagation;
    claims.push_back(std::move(claim));
  }
  return claims;
}

PropagationResult propagate_known_mappings(std::span<const LogStream> streams,
                                           const MappingClaim& known) {
  PropagationResult result;
  std::vector<FieldClass> classes_seen;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    const auto& stream = streams[s];
    for (std::size_t r = 0; r < stream.records.size(); ++r) {
      const auto& rec = stream.records[r];
      for (std::size_t f = 0; f < rec.fields().size(); ++f) {
        const auto& field = rec.fields()[f];
        const FieldClass cls = field.value.cls();
        if (!detail::same_identity_space(known.cls, cls)) continue;
        if (field.value.render() != known.anonymized) continue;
        result.hits.push_back({s, r, f, cls});
        if (std::find(classes_seen.begin(), classes_seen.end(), cls) == classes_seen.end()) {
          classes_seen.push_back(cls);
        }
      }
    }
  }
  for (const FieldClass cls : classes_seen) {
    MappingClaim claim = known;
    claim.cls = cls;
    claim.source = AttackKind::KnownMapping;
    result.claims.push_back(std::move(claim));
  }
  return result;
}

}  // namespace logveil
