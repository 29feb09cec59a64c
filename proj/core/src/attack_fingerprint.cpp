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
#include <map>

#include "attack_util.hpp"
#include "logveil/attack.hpp"

namespace logveil {

namespace detail {

FlowView flow_view(const LogRecord& rec) {
  FlowView view;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const FieldValue& v = rec.field(i).value;
    switch (v.cls()) {
      case FieldClass::Ipv4Src:
        if (!view.src) view.src = v.render();
        break;
      case FieldClass::Ipv4Dst:
        if (!view.dst) view.dst = v.render();
        break;
      case FieldClass::PortDst:
        if (!view.dst_port) view.dst_port = v.port();
        break;
      case FieldClass::Timestamp:
        if (!view.time) view.time = v.time();
        break;
      default:
        break;
    }
  }
  return view;
}

bool is_black_value(ValueKind kind, std::string_view rendered) noexcept {
  switch (kind) {
    case ValueKind::Address:
      return rendered == "0.0.0.0";
    case ValueKind::Port:
    case ValueKind::Count:
      return rendered == "0";
    case ValueKind::Text:
      return rendered == "-";
    case ValueKind::Time:
      return rendered == "0.000000";
  }
  return false;
}

}  // namespace detail

std::string_view to_string(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::Fingerprint:
      return "fingerprint";
    case AttackKind::Structure:
      return "structure";
    case AttackKind::PrefixPropagation:
      return "prefix";
    case AttackKind::KnownMapping:
      return "known-mapping";
    case AttackKind::Injection:
      return "injection";
  }
  return "fingerprint";
}

std::optional<AttackKind> attack_kind_from_name(std::string_view name) noexcept {
  if (name == "fingerprint") return AttackKind::Fingerprint;
  if (name == "structure") return AttackKind::Structure;
  if (name == "prefix") return AttackKind::PrefixPropagation;
  if (name == "known-mapping") return AttackKind::KnownMapping;
  if (name == "injection") return AttackKind::Injection;
  return std::nullopt;
}

FingerprintResult fingerprint_servers(const LogStream& flows, const FingerprintHint& hint) {
  FingerprintResult result;
  if (hint.known_servers.empty()) return result;

  struct Tally {
    std::size_t total = 0;
    std::size_t service = 0;
  };
  // Ordered map for deterministic tie-breaks.
  std::map<std::string, Tally> per_dst;
  for (const LogRecord& rec : flows.records) {
    const auto view = detail::flow_view(rec);
    if (!view.dst || !view.dst_port) continue;
    Tally& t = per_dst[*view.dst];
    ++t.total;
    if (*view.dst_port == hint.service_port) ++t.service;
  }

  // Hosts whose inbound traffic is dominated by the service port, busiest
  // first.  Rank k is claimed to be known server k.
  struct Candidate {
    std::string dst;
    std::size_t total;
    double share;
  };
  std::vector<Candidate> candidates;
  for (const auto& [dst, tally] : per_dst) {
    if (tally.total == 0) continue;
    const double share =
        static_cast<double>(tally.service) / static_cast<double>(tally.total);
    if (share >= hint.share_threshold) candidates.push_back({dst, tally.total, share});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.total > b.total; });
  result.candidates = candidates.size();

  const std::size_t n = std::min(candidates.size(), hint.known_servers.size());
  for (std::size_t k = 0; k < n; ++k) {
    result.claims.push_back(MappingClaim{FieldClass::Ipv4Dst, candidates[k].dst,
                                         format_ipv4(hint.known_servers[k]), 32,
                                         AttackKind::Fingerprint, candidates[k].share});
  }
  return result;
}

}  // namespace logveil
