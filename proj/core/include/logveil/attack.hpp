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

#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "logveil/engine.hpp"
#include "logveil/record.hpp"

namespace logveil {

// Adversarial re-identification toolkit.  Each attack consumes anonymized
// streams plus whatever outside knowledge the attacker is granted, and
// emits mapping claims that the harness scores against ground truth.  The
// point is measurement: how much identity survives a given profile.

enum class AttackKind : std::uint8_t {
  Fingerprint,
  Structure,
  PrefixPropagation,
  KnownMapping,
  Injection,
};

std::string_view to_string(AttackKind kind) noexcept;
std::optional<AttackKind> attack_kind_from_name(std::string_view name) noexcept;

// One asserted raw<->anonymized correspondence.  For address claims, `bits`
// says how many leading bits of `raw` are asserted (32 = full identity);
// text claims always assert the whole value.  Confidence is the attack's
// own evidence weight: traffic share for fingerprinting, matched fraction
// for injection, 1.0 for the deterministic attacks.
struct MappingClaim {
  FieldClass cls = FieldClass::Ipv4Src;
  std::string anonymized;
  std::string raw;
  int bits = 32;
  AttackKind source = AttackKind::KnownMapping;
  double confidence = 1.0;
};

// --- ground truth -------------------------------------------------------------

// raw<->anonymized value pairs per field class, built positionally from a
// raw stream and its anonymized twin.  Serialized one mapping per line as
// "raw<TAB>anonymized<TAB>class" with backslash escapes for tab, newline,
// and backslash inside values.
class GroundTruth {
 public:
  void add(FieldClass cls, std::string raw, std::string anon);
  void accumulate(const LogStream& raw, const LogStream& anonymized);

  static GroundTruth from_streams(const LogStream& raw, const LogStream& anonymized);

  // Anonymized images of a raw value across the identity space of `cls`
  // (addresses share one space, text classes share one, ports one).
  std::vector<std::string> anon_of(FieldClass cls, std::string_view raw) const;
  std::vector<std::string> raw_of(FieldClass cls, std::string_view anon) const;

  // First recorded pair whose raw side equals `raw`, any class; how a
  // revealed identity becomes a concrete full-bit anchor.
  std::optional<MappingClaim> find_raw(std::string_view raw) const;

  // Distinct (raw, anon) address pairs.
  std::vector<std::pair<std::string, std::string>> address_pairs() const;

  std::size_t size() const noexcept { return entries_.size(); }

  void write(std::ostream& out) const;
  static GroundTruth read(std::istream& in);

 private:
  struct Entry {
    FieldClass cls;
    std::string raw;
    std::string anon;
  };
  std::vector<Entry> entries_;
  std::set<std::string> seen_;  // dedup index over (class, raw, anon)
};

// --- traffic fingerprinting ----------------------------------------------------

struct FingerprintHint {
  Port service_port = 80;
  double share_threshold = 0.95;  // fraction of a host's inbound flows
  // Raw addresses the attacker already knows run the service, busiest
  // first; candidate k is claimed to be known server k.
  std::vector<Ipv4> known_servers;
};

struct FingerprintResult {
  std::vector<MappingClaim> claims;
  std::size_t candidates = 0;  // hosts clearing the threshold
};

// Ranks destination hosts by flows-to-service-port share; hosts clearing
// the threshold, ordered by flow volume, are matched to the known servers.
// Runs on the anonymized trace: whether the service port is still visible
// there is exactly what the attack measures.
FingerprintResult fingerprint_servers(const LogStream& flows, const FingerprintHint& hint);

// --- structural recognition -----------------------------------------------------

struct ScanOptions {
  std::size_t min_destinations = 64;
  std::int64_t window_micros = 600 * kMicrosPerSecond;  // 10 minutes
};

struct ScanStructure {
  std::string scanner;                    // anonymized source, rendered
  std::vector<std::string> destinations;  // anonymized, in probe-time order
  bool prefix_local = false;              // destinations share a /24
};

struct StructureResult {
  std::vector<ScanStructure> scans;
  std::vector<MappingClaim> claims;
};

// Sequential-scan shape: one source probing at least min_destinations
// distinct destinations inside the time window.  Probe order survives
// prefix preservation and rigid shifts, so one full anchor mapping inside
// a detected scan positions every other destination: destination q of the
// scan is claimed to be (anchor raw - anchor position + q).  Without an
// anchor the scan is reported but nothing is claimed.
StructureResult recognize_scan_structure(const LogStream& trace,
                                         std::span<const MappingClaim> anchors,
                                         const ScanOptions& options = {});

// --- prefix-bit propagation -----------------------------------------------------

// Under a prefix-preserving map, an anonymized address that shares L
// leading bits with a fully known anchor shares exactly those L bits (and a
// determined bit L+1) with the anchor's raw address.  Emits one claim per
// unknown anonymized address using the best anchor: bits = min(L+1, 32).
std::vector<MappingClaim> propagate_prefix_bits(std::span<const std::string> anonymized,
                                                std::span<const MappingClaim> anchors);

// --- known-mapping propagation ---------------------------------------------------

struct PropagationHit {
  std::size_t stream = 0;
  std::size_t record = 0;
  std::size_t field = 0;
  FieldClass cls = FieldClass::Ipv4Src;
};

struct PropagationResult {
  std::vector<PropagationHit> hits;
  std::vector<MappingClaim> claims;  // the known claim re-rooted per class seen
};

// Sweeps every stream for fields equal to the known anonymized value
// (within its identity kind: addresses match address fields of any role,
// text matches any text-identity field).  Deanonymizes each occurrence in
// place: one insider mapping travels to every log sharing the pseudonym
// space.
PropagationResult propagate_known_mappings(std::span<const LogStream> streams,
                                           const MappingClaim& known);

// --- data injection ---------------------------------------------------------------

enum class SequenceKind : std::uint8_t { Fibonacci, SeededPrng };
enum class CarrierField : std::uint8_t { DstPort, InterArrival };

struct InjectionPattern {
  SequenceKind kind = SequenceKind::Fibonacci;
  CarrierField carrier = CarrierField::DstPort;
  std::size_t length = 8;  // matched run length; < 8 is rejected
  std::uint64_t seed = 1;  // SeededPrng only
  std::int64_t base_gap_micros = 10 * kMicrosPerSecond;
  double jitter = 0.05;  // relative gap tolerance on detection

  void validate() const;  // throws std::invalid_argument
};

// The carrier values the pattern produces, before anonymization.  Port
// values above 65535 wrap to 1024 + (v mod 64512); gap multipliers apply to
// base_gap_micros.
std::vector<Port> injection_ports(const InjectionPattern& pattern, std::size_t count);
std::vector<std::int64_t> injection_gaps(const InjectionPattern& pattern, std::size_t count);

// Builds `count` netflow-schema probe records from `source` to `target`
// carrying the pattern, starting at `start`.
LogStream inject_generate(const InjectionPattern& pattern, Ipv4 target, std::size_t count,
                          Ipv4 source, UtcMicros start);

struct InjectionMatch {
  bool found = false;
  std::string anon_source;  // rendered, where the pattern surfaced
  std::string anon_target;
  std::vector<MappingClaim> claims;
};

// Searches each (source, destination) flow group, in time order, for a
// contiguous run carrying the pattern.  `claim_target` is the raw address
// the attacker injected toward; when the pattern is found its anonymized
// destination is claimed to be that address.
InjectionMatch inject_detect(const LogStream& trace, const InjectionPattern& pattern,
                             std::optional<Ipv4> claim_target);

// --- harness ------------------------------------------------------------------------

struct EvaluateScenario {
  std::set<AttackKind> attacks;  // empty = all five
  FingerprintHint fingerprint;   // skipped when known_servers is empty
  ScanOptions scan;
  std::optional<InjectionPattern> injection;
  Ipv4 injection_target{};
  std::vector<std::string> reveals;  // raw identity values granted as anchors
};

struct AttackScore {
  AttackKind kind = AttackKind::Fingerprint;
  std::size_t targets = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  double mean_bits = 0.0;         // PrefixPropagation only
  bool carrier_destroyed = false;  // profile removed what the attack reads
  std::string note;
  std::vector<MappingClaim> claims;
};

struct AttackReport {
  std::string profile_name;
  std::string profile_digest;
  std::vector<AttackScore> scores;

  bool any_carrier_destroyed() const noexcept;
  std::string to_text() const;
  void write_xml(std::ostream& out) const;
};

// Full-circle measurement: anonymizes the raw streams under the profile,
// builds positional ground truth, grants the scenario's reveals, then runs
// the selected attacks with claim chaining (fingerprint and injection
// results anchor structure recognition; structure results feed prefix
// propagation; all full claims plus reveals drive known-mapping sweeps) and
// scores every claim against the truth.
AttackReport evaluate(std::span<const LogStream> raw_streams, const Profile& profile,
                      const KeyChain& keys, const EvaluateScenario& scenario,
                      GroundTruth* truth_out = nullptr);

// Scores attacks against anonymized streams with externally supplied truth
// (the sidecar path: the caller has no raw streams).  `profile`, when
// given, drives the carrier-destruction notes.
AttackReport score_attacks(std::span<const LogStream> anonymized, const GroundTruth& truth,
                           const EvaluateScenario& scenario, const Profile* profile);

}  // namespace logveil
