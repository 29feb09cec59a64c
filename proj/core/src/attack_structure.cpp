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
#include <unordered_map>
#include <unordered_set>

#include "attack_util.hpp"
#include "logveil/attack.hpp"

namespace logveil {

namespace {

struct Probe {
  UtcMicros time;
  std::string dst;
};

// Largest set of distinct destinations reachable within one window; probes
// must already be time-ordered.  Returns distinct destinations in
// first-probe order.
std::vector<std::string> best_window(const std::vector<Probe>& probes,
                                     std::int64_t window) {
  std::vector<std::string> best;
  std::unordered_map<std::string, std::size_t> counts;
  std::vector<std::string> order;  // first-seen order within current window
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < probes.size(); ++hi) {
    if (counts[probes[hi].dst]++ == 0) order.push_back(probes[hi].dst);
    while (probes[hi].time.count - probes[lo].time.count > window) {
      auto it = counts.find(probes[lo].dst);
      if (--it->second == 0) {
        counts.erase(it);
        order.erase(std::find(order.begin(), order.end(), probes[lo].dst));
      }
      ++lo;
    }
    if (counts.size() > best.size()) best = order;
  }
  return best;
}

}  // namespace

StructureResult recognize_scan_structure(const LogStream& trace,
                                         std::span<const MappingClaim> anchors,
                                         const ScanOptions& options) {
  StructureResult result;

  std::map<std::string, std::vector<Probe>> by_src;  // ordered for determinism
  for (const LogRecord& rec : trace.records) {
    const auto view = detail::flow_view(rec);
    if (!view.src || !view.dst || !view.time) continue;
    by_src[*view.src].push_back(Probe{*view.time, *view.dst});
  }

  for (auto& [src, probes] : by_src) {
    std::stable_sort(probes.begin(), probes.end(),
                     [](const Probe& a, const Probe& b) { return a.time < b.time; });
    auto dsts = best_window(probes, options.window_micros);
    if (dsts.size() < options.min_destinations) continue;

    ScanStructure scan;
    scan.scanner = src;
    scan.destinations = std::move(dsts);

    // Do the anonymized destinations still cluster in one /24?
    std::size_t parsed = 0, local = 0;
    std::optional<std::uint32_t> prefix;
    for (const std::string& d : scan.destinations) {
      if (const auto addr = parse_ipv4(d)) {
        ++parsed;
        const std::uint32_t p = addr->bits >> 8;
        if (!prefix) prefix = p;
        if (*prefix == p) ++local;
      }
    }
    scan.prefix_local = parsed > 0 && local * 10 >= parsed * 9;

    // An anchor inside the scan pins the arithmetic: destination q maps to
    // anchor_raw - anchor_position + q.
    for (const MappingClaim& anchor : anchors) {
      if (anchor.bits != 32 || value_kind_of(anchor.cls) != ValueKind::Address) continue;
      const auto pos = std::find(scan.destinations.begin(), scan.destinations.end(),
                                 anchor.anonymized);
      if (pos == scan.destinations.end()) continue;
      const auto anchor_raw = parse_ipv4(anchor.raw);
      if (!anchor_raw) continue;
      const std::uint32_t base =
          anchor_raw->bits -
          static_cast<std::uint32_t>(pos - scan.destinations.begin());
      std::unordered_set<std::string> claimed;
      for (std::size_t q = 0; q < scan.destinations.size(); ++q) {
        const std::string& anon = scan.destinations[q];
        if (!claimed.insert(anon).second) continue;
        result.claims.push_back(
            MappingClaim{FieldClass::Ipv4Dst, anon,
                         format_ipv4(Ipv4{base + static_cast<std::uint32_t>(q)}), 32,
                         AttackKind::Structure});
      }
      break;
    }

    result.scans.push_back(std::move(scan));
  }
  return result;
}

}  // namespace logveil
