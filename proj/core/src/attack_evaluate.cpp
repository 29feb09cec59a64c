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
#include <ostream>
#include <set>
#include <sstream>

#include "attack_util.hpp"
#include "logveil/attack.hpp"
#include "logveil/xml.hpp"

namespace logveil {

namespace {

bool claim_is_black(const MappingClaim& claim) {
  return detail::is_black_value(value_kind_of(claim.cls), claim.anonymized);
}

// Truth backs the claim: the anonymized value maps to the claimed raw
// somewhere in its identity space.
bool claim_true(const GroundTruth& truth, const MappingClaim& claim) {
  const auto raws = truth.raw_of(claim.cls, claim.anonymized);
  return std::find(raws.begin(), raws.end(), claim.raw) != raws.end();
}

std::string pool_key(const MappingClaim& claim) {
  std::string key;
  switch (value_kind_of(claim.cls)) {
    case ValueKind::Address:
      key = "addr";
      break;
    case ValueKind::Port:
      key = "port";
      break;
    case ValueKind::Text:
      key = "text";
      break;
    case ValueKind::Time:
      key = "time";
      break;
    case ValueKind::Count:
      key = "count";
      break;
  }
  key += '\x1f';
  key += claim.anonymized;
  key += '\x1f';
  key += claim.raw;
  return key;
}

// Full-identity claims usable as anchors for later attacks, deduplicated
// and stripped of annihilation constants (a claim about a black value
// binds to everything at once, which is to say nothing).
class AnchorPool {
 public:
  std::size_t add_all(std::span<const MappingClaim> claims) {
    std::size_t vacuous = 0;
    for (const auto& c : claims) {
      if (c.bits != 32) continue;
      if (claim_is_black(c)) {
        ++vacuous;
        continue;
      }
      if (seen_.insert(pool_key(c)).second) pool_.push_back(c);
    }
    return vacuous;
  }

  std::span<const MappingClaim> claims() const noexcept { return pool_; }
  bool empty() const noexcept { return pool_.empty(); }

 private:
  std::vector<MappingClaim> pool_;
  std::set<std::string> seen_;
};

int level_of(const Profile* profile, FieldClass cls) {
  return profile ? profile->assignment(cls).level : 0;
}

std::int64_t unit_micros(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::Second:
      return kMicrosPerSecond;
    case TimeUnit::Minute:
      return 60 * kMicrosPerSecond;
    case TimeUnit::Hour:
      return 3600 * kMicrosPerSecond;
    case TimeUnit::Day:
      return 86400 * kMicrosPerSecond;
  }
  return kMicrosPerSecond;
}

bool fingerprint_destroyed(const Profile* profile, const FingerprintHint& hint) {
  if (!profile) return false;
  const auto& port = profile->assignment(FieldClass::PortDst);
  if (port.level >= 2) return true;
  if (port.level == 1 && hint.service_port >= port.params.boundary) return true;
  return level_of(profile, FieldClass::Ipv4Dst) == 4;
}

bool structure_destroyed(const Profile* profile) {
  // Truncation and black marking collapse destination distinctness; the
  // scan shape itself disappears.
  return profile && level_of(profile, FieldClass::Ipv4Dst) >= 3;
}

bool prefix_destroyed(const Profile* profile) {
  // Full permutation and black marking sever bit relations.  Truncation
  // does not: surviving high bits still equal the raw high bits.
  if (!profile) return false;
  for (const FieldClass cls :
       {FieldClass::Ipv4Src, FieldClass::Ipv4Dst, FieldClass::Ipv4Other}) {
    const int level = level_of(profile, cls);
    if (level != 2 && level != 4) return false;
  }
  return true;
}

bool injection_destroyed(const Profile* profile, const InjectionPattern& pattern) {
  if (!profile) return false;
  if (pattern.carrier == CarrierField::DstPort) {
    const auto& port = profile->assignment(FieldClass::PortDst);
    if (port.level >= 2) return true;
    if (port.level == 1) {
      // Bilateral leaves ports below the boundary alone; the probe run
      // only dies when some expected value crosses it.
      for (const Port p : injection_ports(pattern, pattern.length)) {
        if (p >= port.params.boundary) return true;
      }
    }
    return false;
  }
  const auto& ts = profile->assignment(FieldClass::Timestamp);
  if (ts.level >= 3) return true;
  return ts.level == 1 && unit_micros(ts.params.unit) > pattern.base_gap_micros;
}

bool wants(const EvaluateScenario& scenario, AttackKind kind) {
  return scenario.attacks.empty() || scenario.attacks.contains(kind);
}

// Leading raw bits of the claim that actually hold against every raw value
// the truth records behind the anonymized side.
int verified_prefix_bits(const GroundTruth& truth, const MappingClaim& claim, bool& known) {
  const auto raws = truth.raw_of(claim.cls, claim.anonymized);
  if (raws.empty()) {
    known = false;
    return 0;
  }
  known = true;
  const auto claimed = parse_ipv4(claim.raw);
  if (!claimed) return 0;
  int verified = claim.bits;
  for (const auto& raw : raws) {
    const auto addr = parse_ipv4(raw);
    if (!addr) return 0;
    verified = std::min(verified, detail::lcp32(claimed->bits, addr->bits));
  }
  return verified;
}

void note_vacuous(AttackScore& score, std::size_t vacuous) {
  if (vacuous == 0) return;
  if (!score.note.empty()) score.note += "; ";
  score.note += std::to_string(vacuous) + " vacuous claim";
  if (vacuous > 1) score.note += 's';
  score.note += " about annihilation constants discarded";
}

// Scores full-identity claims straight against the truth, dropping black
// claims first.
AttackScore score_full_claims(AttackKind kind, std::vector<MappingClaim> claims,
                              const GroundTruth& truth) {
  AttackScore score;
  score.kind = kind;
  std::size_t vacuous = 0;
  for (auto& c : claims) {
    if (claim_is_black(c)) {
      ++vacuous;
      continue;
    }
    if (claim_true(truth, c)) {
      ++score.tp;
    } else {
      ++score.fp;
    }
    score.claims.push_back(std::move(c));
  }
  note_vacuous(score, vacuous);
  return score;
}

struct RunInputs {
  std::span<const LogStream> anonymized;
  // Raw twins aligned with `anonymized`; empty in sidecar mode.
  std::span<const LogStream> raw;
  const GroundTruth& truth;
  const EvaluateScenario& scenario;
  const Profile* profile;
  std::size_t structure_targets;
};

std::vector<AttackScore> run_attacks(const RunInputs& in) {
  std::vector<AttackScore> scores;
  AnchorPool anchors;

  // Revealed identities become anchors before anything runs.
  for (const auto& reveal : in.scenario.reveals) {
    if (const auto anchor = in.truth.find_raw(reveal)) {
      anchors.add_all(std::span(&*anchor, 1));
    }
  }
  const std::size_t reveal_anchors = anchors.claims().size();

  if (wants(in.scenario, AttackKind::Fingerprint) &&
      !in.scenario.fingerprint.known_servers.empty()) {
    std::vector<MappingClaim> claims;
    std::set<std::string> seen;
    for (const auto& stream : in.anonymized) {
      const auto result = fingerprint_servers(stream, in.scenario.fingerprint);
      for (const auto& c : result.claims) {
        if (seen.insert(pool_key(c)).second) claims.push_back(c);
      }
    }
    AttackScore score = score_full_claims(AttackKind::Fingerprint, std::move(claims), in.truth);
    score.targets = in.scenario.fingerprint.known_servers.size();
    score.carrier_destroyed = fingerprint_destroyed(in.profile, in.scenario.fingerprint);
    anchors.add_all(score.claims);
    scores.push_back(std::move(score));
  }

  if (wants(in.scenario, AttackKind::Injection) && in.scenario.injection) {
    std::vector<MappingClaim> claims;
    for (const auto& stream : in.anonymized) {
      const auto match =
          inject_detect(stream, *in.scenario.injection, in.scenario.injection_target);
      if (match.found) {
        claims = match.claims;
        break;
      }
    }
    AttackScore score = score_full_claims(AttackKind::Injection, std::move(claims), in.truth);
    score.targets = 1;
    score.carrier_destroyed = injection_destroyed(in.profile, *in.scenario.injection);
    anchors.add_all(score.claims);
    scores.push_back(std::move(score));
  }

  if (wants(in.scenario, AttackKind::Structure)) {
    std::vector<MappingClaim> claims;
    std::set<std::string> seen;
    for (const auto& stream : in.anonymized) {
      const auto result = recognize_scan_structure(stream, anchors.claims(), in.scenario.scan);
      for (const auto& c : result.claims) {
        if (seen.insert(pool_key(c)).second) claims.push_back(c);
      }
    }
    AttackScore score = score_full_claims(AttackKind::Structure, std::move(claims), in.truth);
    score.targets = in.structure_targets;
    score.carrier_destroyed = structure_destroyed(in.profile);
    anchors.add_all(score.claims);
    scores.push_back(std::move(score));
  }

  if (wants(in.scenario, AttackKind::PrefixPropagation)) {
    // Target universe: every distinct non-black anonymized address seen.
    std::vector<std::string> universe;
    std::set<std::string> seen;
    for (const auto& stream : in.anonymized) {
      for (const auto& rec : stream.records) {
        for (const auto& field : rec.fields()) {
          if (field.value.kind() != ValueKind::Address) continue;
          auto rendered = field.value.render();
          if (detail::is_black_value(ValueKind::Address, rendered)) continue;
          if (seen.insert(rendered).second) universe.push_back(std::move(rendered));
        }
      }
    }
    AttackScore score;
    score.kind = AttackKind::PrefixPropagation;
    score.targets = universe.size();
    score.carrier_destroyed = prefix_destroyed(in.profile);
    score.claims = propagate_prefix_bits(universe, anchors.claims());
    std::size_t measured = 0;
    double bits_sum = 0.0;
    for (const auto& c : score.claims) {
      bool known = false;
      const int verified = verified_prefix_bits(in.truth, c, known);
      if (!known) continue;
      ++measured;
      bits_sum += verified;
      if (verified >= c.bits) {
        ++score.tp;
      } else {
        ++score.fp;
      }
    }
    score.mean_bits = measured == 0 ? 0.0 : bits_sum / static_cast<double>(measured);
    if (anchors.empty()) score.note = "no anchors available";
    scores.push_back(std::move(score));
  }

  if (wants(in.scenario, AttackKind::KnownMapping)) {
    AttackScore score;
    score.kind = AttackKind::KnownMapping;
    score.targets = anchors.claims().size();
    // Destroyed when reveals were granted but every one of them came back
    // annihilated, leaving nothing to sweep with.
    score.carrier_destroyed =
        !in.scenario.reveals.empty() && reveal_anchors == 0 && anchors.empty();
    if (anchors.empty() && in.scenario.reveals.empty()) {
      score.note = "no anchors available";
    }
    for (const auto& anchor : anchors.claims()) {
      const auto result = propagate_known_mappings(in.anonymized, anchor);
      const bool backed = claim_true(in.truth, anchor);
      std::set<std::size_t> hit_streams;
      for (const auto& hit : result.hits) {
        bool verified = backed;
        if (!in.raw.empty()) {
          const auto& twin = in.raw[hit.stream].records[hit.record];
          verified = twin.fields()[hit.field].value.render() == anchor.raw;
        }
        if (verified) hit_streams.insert(hit.stream);
      }
      // The mapping propagated when verified occurrences span streams.
      if (hit_streams.size() >= 2) ++score.tp;
      for (auto& c : result.claims) {
        if (!claim_true(in.truth, c)) ++score.fp;
        score.claims.push_back(std::move(c));
      }
    }
    scores.push_back(std::move(score));
  }

  return scores;
}

// Recoverable structure targets: every destination position inside a
// detected scan is one mapping the attack is on the hook for.
std::size_t count_scan_targets(std::span<const LogStream> streams, const ScanOptions& options) {
  std::size_t total = 0;
  for (const auto& stream : streams) {
    for (const auto& scan : recognize_scan_structure(stream, {}, options).scans) {
      total += scan.destinations.size();
    }
  }
  return total;
}

}  // namespace

bool AttackReport::any_carrier_destroyed() const noexcept {
  return std::any_of(scores.begin(), scores.end(),
                     [](const AttackScore& s) { return s.carrier_destroyed; });
}

std::string AttackReport::to_text() const {
  std::ostringstream out;
  out << "report " << profile_name << " digest=" << profile_digest << '\n';
  for (const auto& s : scores) {
    out << "attack " << to_string(s.kind) << ": targets=" << s.targets << " tp=" << s.tp
        << " fp=" << s.fp << " claims=" << s.claims.size();
    if (s.kind == AttackKind::PrefixPropagation) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2f", s.mean_bits);
      out << " mean-bits=" << buf;
    }
    out << " destroyed=" << (s.carrier_destroyed ? "yes" : "no") << '\n';
  }
  for (const auto& s : scores) {
    if (!s.note.empty()) out << "note " << to_string(s.kind) << ": " << s.note << '\n';
  }
  return out.str();
}

void AttackReport::write_xml(std::ostream& out) const {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<attack-report profile=\"" << xml_escape(profile_name) << "\" digest=\""
      << xml_escape(profile_digest) << "\">\n";
  for (const auto& s : scores) {
    char bits[32];
    std::snprintf(bits, sizeof bits, "%.2f", s.mean_bits);
    out << "  <attack kind=\"" << to_string(s.kind) << "\" targets=\"" << s.targets
        << "\" tp=\"" << s.tp << "\" fp=\"" << s.fp << "\" mean-bits=\"" << bits
        << "\" destroyed=\"" << (s.carrier_destroyed ? "yes" : "no") << "\"";
    if (!s.note.empty()) out << " note=\"" << xml_escape(s.note) << "\"";
    if (s.claims.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    for (const auto& c : s.claims) {
      char conf[32];
      std::snprintf(conf, sizeof conf, "%.4f", c.confidence);
      out << "    <claim class=\"" << to_string(c.cls) << "\" anonymized=\""
          << xml_escape(c.anonymized) << "\" raw=\"" << xml_escape(c.raw) << "\" bits=\""
          << c.bits << "\" confidence=\"" << conf << "\" source=\"" << to_string(c.source)
          << "\"/>\n";
    }
    out << "  </attack>\n";
  }
  out << "</attack-report>\n";
}

AttackReport evaluate(std::span<const LogStream> raw_streams, const Profile& profile,
                      const KeyChain& keys, const EvaluateScenario& scenario,
                      GroundTruth* truth_out) {
  std::vector<LogStream> anonymized;
  anonymized.reserve(raw_streams.size());
  for (const auto& raw : raw_streams) {
    anonymized.push_back(apply_profile(raw, profile, keys).stream);
  }

  GroundTruth truth;
  for (std::size_t i = 0; i < raw_streams.size(); ++i) {
    truth.accumulate(raw_streams[i], anonymized[i]);
  }
  if (truth_out) *truth_out = truth;

  RunInputs in{anonymized, raw_streams, truth, scenario, &profile,
               count_scan_targets(raw_streams, scenario.scan)};
  AttackReport report;
  report.profile_name = profile.name();
  report.profile_digest = profile.digest();
  report.scores = run_attacks(in);
  return report;
}

AttackReport score_attacks(std::span<const LogStream> anonymized, const GroundTruth& truth,
                           const EvaluateScenario& scenario, const Profile* profile) {
  RunInputs in{anonymized, {}, truth, scenario, profile,
               count_scan_targets(anonymized, scenario.scan)};
  AttackReport report;
  if (profile) {
    report.profile_name = profile->name();
    report.profile_digest = profile->digest();
  }
  report.scores = run_attacks(in);
  return report;
}

}  // namespace logveil
