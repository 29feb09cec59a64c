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
#include <cstdio>
#include <map>
#include <stdexcept>

#include "attack_util.hpp"
#include "logveil/attack.hpp"
#include "logveil/parsers.hpp"

namespace logveil {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Raw sequence values before carrier mapping.  Fibonacci runs 1, 2, 3, 5,
// 8, ... (wrapping mod 2^64 far beyond any practical run length).
std::vector<std::uint64_t> sequence_values(const InjectionPattern& pattern, std::size_t count) {
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (pattern.kind == SequenceKind::Fibonacci) {
    std::uint64_t a = 1;
    std::uint64_t b = 2;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(a);
      const std::uint64_t next = a + b;
      a = b;
      b = next;
    }
  } else {
    std::uint64_t state = pattern.seed;
    for (std::size_t i = 0; i < count; ++i) out.push_back(splitmix64(state));
  }
  return out;
}

std::string render_micros(std::int64_t micros) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(micros / kMicrosPerSecond),
                static_cast<long long>(micros % kMicrosPerSecond));
  return buf;
}

}  // namespace

void InjectionPattern::validate() const {
  if (length < 8) {
    throw std::invalid_argument("injection pattern length must be at least 8");
  }
  if (carrier == CarrierField::InterArrival && base_gap_micros <= 0) {
    throw std::invalid_argument("injection base gap must be positive");
  }
  if (jitter < 0.0 || jitter >= 1.0) {
    throw std::invalid_argument("injection jitter must lie in [0, 1)");
  }
}

std::vector<Port> injection_ports(const InjectionPattern& pattern, std::size_t count) {
  pattern.validate();
  std::vector<Port> out;
  out.reserve(count);
  for (const std::uint64_t v : sequence_values(pattern, count)) {
    // Registered-range wrap keeps every probe a plausible port while the
    // sequence stays decodable: the attacker applies the same wrap.
    out.push_back(v <= 65535 ? static_cast<Port>(v)
                             : static_cast<Port>(1024 + v % 64512));
  }
  return out;
}

std::vector<std::int64_t> injection_gaps(const InjectionPattern& pattern, std::size_t count) {
  pattern.validate();
  std::vector<std::int64_t> out;
  out.reserve(count);
  if (pattern.kind == SequenceKind::Fibonacci) {
    // 1, 1, 2, 3, 5, ... times the base gap; multipliers clamp so long
    // runs stay inside a day rather than overflowing the epoch.
    std::uint64_t a = 1;
    std::uint64_t b = 1;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(static_cast<std::int64_t>(std::min<std::uint64_t>(a, 1 << 20)) *
                    pattern.base_gap_micros);
      const std::uint64_t next = a + b;
      a = b;
      b = next;
    }
  } else {
    std::uint64_t state = pattern.seed;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(static_cast<std::int64_t>(1 + splitmix64(state) % 31) *
                    pattern.base_gap_micros);
    }
  }
  return out;
}

LogStream inject_generate(const InjectionPattern& pattern, Ipv4 target, std::size_t count,
                          Ipv4 source, UtcMicros start) {
  pattern.validate();
  const auto ports = injection_ports(pattern, count);
  const auto gaps = injection_gaps(pattern, count);

  LogStream stream;
  stream.schema = "netflow";
  stream.source_label = "inject";
  stream.records.reserve(count);

  std::int64_t when = start.count;
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0) {
      when += pattern.carrier == CarrierField::InterArrival ? gaps[i - 1]
                                                            : pattern.base_gap_micros;
    }
    const Port dst_port = pattern.carrier == CarrierField::DstPort ? ports[i] : Port{80};
    std::string line = render_micros(when);
    line += ',';
    line += render_micros(when + kMicrosPerSecond);
    line += ',';
    line += format_ipv4(source);
    line += ',';
    line += format_ipv4(target);
    line += ",40000,";
    line += std::to_string(dst_port);
    line += ",tcp,1,40";
    auto outcome = parse_netflow(line);
    if (!outcome.ok()) {
      throw std::logic_error("injection generator produced an unparseable line");
    }
    stream.records.push_back(outcome.take_record());
  }
  if (!stream.records.empty()) {
    stream.capture_interval = {{UtcMicros{start.count}, UtcMicros{when}}};
  }
  return stream;
}

InjectionMatch inject_detect(const LogStream& trace, const InjectionPattern& pattern,
                             std::optional<Ipv4> claim_target) {
  pattern.validate();
  InjectionMatch match;

  struct Probe {
    UtcMicros time;
    Port port;
  };
  // (source, destination) flow groups in first-seen order.
  std::map<std::pair<std::string, std::string>, std::vector<Probe>> groups;
  std::vector<const std::pair<const std::pair<std::string, std::string>, std::vector<Probe>>*>
      order;
  for (const auto& rec : trace.records) {
    const auto view = detail::flow_view(rec);
    if (!view.src || !view.dst || !view.time) continue;
    if (pattern.carrier == CarrierField::DstPort && !view.dst_port) continue;
    auto [it, inserted] =
        groups.try_emplace({*view.src, *view.dst}, std::vector<Probe>{});
    if (inserted) order.push_back(&*it);
    it->second.push_back({*view.time, view.dst_port.value_or(0)});
  }

  const std::size_t need =
      pattern.carrier == CarrierField::DstPort ? pattern.length : pattern.length + 1;
  const auto ports = injection_ports(pattern, pattern.length);
  const auto gaps = injection_gaps(pattern, pattern.length);

  for (const auto* entry : order) {
    auto probes = entry->second;
    if (probes.size() < need) continue;
    std::stable_sort(probes.begin(), probes.end(),
                     [](const Probe& a, const Probe& b) { return a.time < b.time; });

    for (std::size_t at = 0; at + need <= probes.size(); ++at) {
      bool hit = true;
      if (pattern.carrier == CarrierField::DstPort) {
        for (std::size_t i = 0; i < pattern.length; ++i) {
          if (probes[at + i].port != ports[i]) {
            hit = false;
            break;
          }
        }
      } else {
        for (std::size_t i = 0; i < pattern.length; ++i) {
          const std::int64_t delta = probes[at + i + 1].time.count - probes[at + i].time.count;
          const double tolerance = pattern.jitter * static_cast<double>(gaps[i]);
          if (static_cast<double>(delta) < static_cast<double>(gaps[i]) - tolerance ||
              static_cast<double>(delta) > static_cast<double>(gaps[i]) + tolerance) {
            hit = false;
            break;
          }
        }
      }
      if (!hit) continue;

      match.found = true;
      match.anon_source = entry->first.first;
      match.anon_target = entry->first.second;
      if (claim_target) {
        MappingClaim claim;
        claim.cls = FieldClass::Ipv4Dst;
        claim.anonymized = match.anon_target;
        claim.raw = format_ipv4(*claim_target);
        claim.bits = 32;
        claim.source = AttackKind::Injection;
        match.claims.push_back(std::move(claim));
      }
      return match;
    }
  }
  return match;
}

}  // namespace logveil
