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

// System acceptance gate.  Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero when any criterion fails.  All numeric
// tolerances are pinned here, in code, so a regression cannot loosen them
// silently.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "logveil/attack.hpp"
#include "logveil/engine.hpp"
#include "logveil/key.hpp"
#include "logveil/parsers.hpp"
#include "logveil/prefix_preserving.hpp"
#include "logveil/prf.hpp"
#include "logveil/primitives.hpp"
#include "logveil/profile.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace logveil;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.  Prefix preservation and bijectivity are exact (zero
// mismatches, zero collisions); the remaining constants are the fixture
// sizes and wall-clock budgets the criteria commit to.
constexpr double kPrefixSecondsBudget = 5.0;
constexpr double kBijectivitySecondsBudget = 30.0;
constexpr std::size_t kRandomPrefixPairs = 10000;
constexpr std::size_t kRoundTripLinesPerSchema = 1000;
constexpr std::size_t kInjectionBackgroundFlows = 10000;
constexpr std::size_t kDeterminismRecords = 100000;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail
            << '\n';
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Profile profile_of(const std::string& text) {
  std::istringstream in(text);
  return load_profile(in);
}

KeyChain test_chain() {
  KeyChain chain;
  chain.add(testsupport::test_key());
  return chain;
}

std::string stream_text(const LogStream& stream) {
  std::ostringstream out;
  write_stream(out, stream);
  return out.str();
}

// --- criterion 1: prefix preservation ------------------------------------------

void criterion_prefix_preservation() {
  const auto start = std::chrono::steady_clock::now();
  HmacSha256Prf prf(testsupport::test_key());
  PrefixPreservingPermutation pp(prf);

  std::size_t mismatches = 0;
  std::size_t pairs = 0;

  // Exhaustive /24: every address pair in 10.3.7.0/24.
  std::vector<std::uint32_t> block_raw(256), block_anon(256);
  for (std::uint32_t i = 0; i < 256; ++i) {
    block_raw[i] = 0x0a030700u + i;
    block_anon[i] = pp.anonymize(Ipv4{block_raw[i]}).bits;
  }
  for (std::size_t i = 0; i < 256; ++i) {
    for (std::size_t j = i + 1; j < 256; ++j) {
      ++pairs;
      if (testsupport::lcp_oracle(block_raw[i], block_raw[j]) !=
          testsupport::lcp_oracle(block_anon[i], block_anon[j])) {
        ++mismatches;
      }
    }
  }

  // Random pairs, half uniform and half with a forced shared prefix so
  // every lcp length is exercised.
  std::mt19937 rng(20260821);
  std::uniform_int_distribution<std::uint32_t> word;
  std::uniform_int_distribution<int> plen(0, 32);
  for (std::size_t n = 0; n < kRandomPrefixPairs; ++n) {
    const std::uint32_t x = word(rng);
    std::uint32_t y = word(rng);
    if (n % 2 == 0) {
      const int keep = plen(rng);
      if (keep == 32) {
        y = x;
      } else {
        const std::uint32_t low = ~std::uint32_t{0} >> keep;
        y = (x & ~low) | (y & low) | ((~x) & (std::uint32_t{1} << (31 - keep)));
      }
    }
    ++pairs;
    const int raw_lcp = testsupport::lcp_oracle(x, y);
    const int anon_lcp = testsupport::lcp_oracle(pp.anonymize(Ipv4{x}).bits,
                                                 pp.anonymize(Ipv4{y}).bits);
    if (raw_lcp != anon_lcp) ++mismatches;
  }

  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "lcp preserved on " << pairs << " pairs, " << mismatches << " mismatches, "
         << elapsed << "s (budget " << kPrefixSecondsBudget << "s)";
  report(1, mismatches == 0 && elapsed < kPrefixSecondsBudget, detail.str());
}

// --- criterion 2: bijectivity scans ----------------------------------------------

void criterion_bijectivity() {
  const auto start = std::chrono::steady_clock::now();
  HmacSha256Prf prf(testsupport::test_key());
  PrefixPreservingPermutation pp(prf);

  std::size_t collisions = 0;
  std::size_t range_escapes = 0;

  // Address map over a full /16.
  std::vector<std::uint32_t> images;
  images.reserve(65536);
  for (std::uint32_t i = 0; i < 65536; ++i) {
    images.push_back(pp.anonymize(Ipv4{0x0a070000u + i}).bits);
  }
  std::sort(images.begin(), images.end());
  collisions +=
      static_cast<std::size_t>(images.end() - std::unique(images.begin(), images.end()));

  // Service-preserving port map over the ephemeral band.
  std::vector<std::uint16_t> ports;
  ports.reserve(64512);
  for (std::uint32_t p = 1024; p <= 65535; ++p) {
    const Port image = port_bilateral(static_cast<Port>(p), prf);
    if (image < 1024) ++range_escapes;
    ports.push_back(image);
  }
  std::sort(ports.begin(), ports.end());
  collisions +=
      static_cast<std::size_t>(ports.end() - std::unique(ports.begin(), ports.end()));

  // Full port permutation over all 65536 values.
  ports.clear();
  ports.reserve(65536);
  for (std::uint32_t p = 0; p <= 65535; ++p) {
    ports.push_back(port_permute(static_cast<Port>(p), prf));
  }
  std::sort(ports.begin(), ports.end());
  collisions +=
      static_cast<std::size_t>(ports.end() - std::unique(ports.begin(), ports.end()));

  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "65536 addresses + 64512 bilateral ports + 65536 permuted ports, "
         << collisions << " collisions, " << range_escapes << " band escapes, " << elapsed
         << "s (budget " << kBijectivitySecondsBudget << "s)";
  report(2, collisions == 0 && range_escapes == 0 && elapsed < kBijectivitySecondsBudget,
         detail.str());
}

// --- criterion 3: fingerprinting worked example -----------------------------------

void criterion_fingerprint_example() {
  // One server with a 95% service-port share among its inbound flows.
  const auto lines = testsupport::web_fixture("192.168.77.29", 950, 50);
  const auto raw = testsupport::must_read("netflow", "flows", lines);
  const auto profile = profile_of(
      "profile pp\nscope cross-log\nkey shared logveil.key\nfield ipv4 level 1\n");

  EvaluateScenario scenario;
  scenario.attacks = {AttackKind::Fingerprint};
  scenario.fingerprint.service_port = 80;
  scenario.fingerprint.share_threshold = 0.95;
  scenario.fingerprint.known_servers = {*parse_ipv4("192.168.77.29")};

  const LogStream raws[] = {raw};
  const auto result = evaluate(raws, profile, test_chain(), scenario);

  bool pass = false;
  std::string placed = "no claim";
  for (const auto& score : result.scores) {
    if (score.kind != AttackKind::Fingerprint) continue;
    HmacSha256Prf prf(testsupport::test_key());
    const std::string expect = format_ipv4(pp_anonymize(*parse_ipv4("192.168.77.29"), prf));
    pass = score.targets == 1 && score.tp == 1 && score.fp == 0 &&
           score.claims.size() == 1 && score.claims[0].raw == "192.168.77.29" &&
           score.claims[0].anonymized == expect;
    if (!score.claims.empty()) {
      placed = score.claims[0].anonymized + " -> " + score.claims[0].raw;
    }
  }
  report(3, pass, "pseudonymized server identified (" + placed + "), 1/1 tp, 0 fp");
}

// --- criterion 4: structure recognition --------------------------------------------

void criterion_structure_recognition() {
  const auto lines = testsupport::scan_fixture("198.18.0.1", 0x0a030700u, 256,
                                               1'600'000'000LL);
  const auto raw = testsupport::must_read("netflow", "scan", lines);

  EvaluateScenario scenario;
  scenario.attacks = {AttackKind::Structure};
  scenario.reveals = {"10.3.7.23"};

  const LogStream raws[] = {raw};

  const auto pp = profile_of(
      "profile ppshift\nscope cross-log\nkey shared logveil.key\n"
      "field ipv4 level 1\nfield timestamp level 2\n");
  const auto under_pp = evaluate(raws, pp, test_chain(), scenario);

  const auto black = profile_of("profile black\nfield ipv4 level 4\n");
  const auto under_black = evaluate(raws, black, KeyChain{}, scenario);

  std::size_t pp_tp = 0, pp_fp = 0, pp_targets = 0, black_claims = 0;
  for (const auto& s : under_pp.scores) {
    if (s.kind == AttackKind::Structure) {
      pp_tp = s.tp;
      pp_fp = s.fp;
      pp_targets = s.targets;
    }
  }
  for (const auto& s : under_black.scores) {
    if (s.kind == AttackKind::Structure) black_claims = s.claims.size();
  }

  std::ostringstream detail;
  detail << "sequential /24 under pp+shift recovered " << pp_tp << "/" << pp_targets
         << " with " << pp_fp << " fp; black marker recovered " << black_claims;
  report(4, pp_targets == 256 && pp_tp == 256 && pp_fp == 0 && black_claims == 0,
         detail.str());
}

// --- criterion 5: data injection ----------------------------------------------------

void criterion_injection() {
  InjectionPattern pattern;  // fibonacci dst ports, length 8
  const Ipv4 target = *parse_ipv4("10.60.0.14");
  const Ipv4 attacker = *parse_ipv4("198.51.100.77");

  auto lines = testsupport::background_fixture(kInjectionBackgroundFlows, 21, 100000);
  const auto probes =
      inject_generate(pattern, target, 8, attacker, UtcMicros{130000 * kMicrosPerSecond});
  for (const auto& rec : probes.records) lines.push_back(serialize(rec));
  const auto raw = testsupport::must_read("netflow", "flows", lines);

  EvaluateScenario scenario;
  scenario.attacks = {AttackKind::Injection};
  scenario.injection = pattern;
  scenario.injection_target = target;

  const LogStream raws[] = {raw};

  const auto open = profile_of("profile open\n");
  const auto found = evaluate(raws, open, KeyChain{}, scenario);

  const auto sealed = profile_of(
      "profile sealed\nscope cross-log\nkey shared logveil.key\nfield port level 2\n");
  const auto hidden = evaluate(raws, sealed, test_chain(), scenario);

  std::size_t open_tp = 0, open_fp = 0, sealed_claims = 0;
  for (const auto& s : found.scores) {
    if (s.kind == AttackKind::Injection) {
      open_tp = s.tp;
      open_fp = s.fp;
    }
  }
  for (const auto& s : hidden.scores) {
    if (s.kind == AttackKind::Injection) sealed_claims = s.claims.size();
  }

  std::ostringstream detail;
  detail << "fibonacci port run in " << kInjectionBackgroundFlows << " background flows: "
         << open_tp << "/1 tp, " << open_fp << " fp at level 0; " << sealed_claims
         << " claims under port permutation";
  report(5, open_tp == 1 && open_fp == 0 && sealed_claims == 0, detail.str());
}

// --- criterion 6: known-mapping propagation ------------------------------------------

void criterion_known_mapping() {
  const std::vector<std::string> web1 = {
      "10.0.0.5 - emily [10/Oct/2000:13:55:36 +0000] \"GET / HTTP/1.0\" 200 7",
      "10.0.0.6 - frank [10/Oct/2000:13:55:40 +0000] \"GET / HTTP/1.0\" 200 7",
      "10.0.0.5 - emily [10/Oct/2000:13:56:02 +0000] \"GET /a HTTP/1.0\" 304 0",
      "10.0.0.7 - frank [10/Oct/2000:13:56:10 +0000] \"GET /b HTTP/1.0\" 200 99",
      "10.0.0.5 - emily [10/Oct/2000:13:57:00 +0000] \"GET /c HTTP/1.0\" 200 12",
  };
  const std::vector<std::string> web2 = {
      "10.1.0.5 - emily [11/Oct/2000:09:00:00 +0000] \"GET / HTTP/1.0\" 200 7",
      "10.1.0.6 - ops [11/Oct/2000:09:00:30 +0000] \"GET /s HTTP/1.0\" 200 7",
      "10.1.0.5 - emily [11/Oct/2000:09:01:00 +0000] \"GET /t HTTP/1.0\" 200 7",
  };
  const std::vector<std::string> auth = {
      "Oct 11 09:02:00 gw emily",
      "Oct 11 09:02:30 gw frank logged in",
      "Oct 11 09:03:00 gw emily",
  };
  const std::size_t emily_truth = 3 + 2 + 2;  // every occurrence, all streams

  const LogStream raw[] = {testsupport::must_read("clf", "web1.clf", web1),
                           testsupport::must_read("clf", "web2.clf", web2),
                           testsupport::must_read("syslog", "auth.syslog", auth)};

  // Legacy namespace, cross-log scope: one revealed token sweeps everything.
  const auto legacy = profile_of(
      "profile legacy\nscope cross-log\nkey shared logveil.key\n"
      "field text level 1 param=namespace:legacy\n");
  const KeyChain chain = test_chain();
  LogStream legacy_anon[3];
  for (int i = 0; i < 3; ++i) legacy_anon[i] = apply_profile(raw[i], legacy, chain).stream;

  HmacSha256Prf prf(testsupport::test_key());
  const MappingClaim legacy_known{FieldClass::UserId,
                                  keyed_pseudonym("emily", prf, kLegacyNamespace), "emily",
                                  32, AttackKind::KnownMapping, 1.0};
  const auto swept = propagate_known_mappings(legacy_anon, legacy_known);
  std::set<std::size_t> streams_hit;
  for (const auto& hit : swept.hits) streams_hit.insert(hit.stream);
  const bool cross_ok = swept.hits.size() == emily_truth && streams_hit.size() == 3;

  // Per-stream scope: the web1 token must not resolve anywhere else.
  const auto per = profile_of(
      "profile per\nscope per-stream\nkey shared logveil.key\n"
      "field text level 1 param=namespace:legacy\n");
  LogStream per_anon[3];
  for (int i = 0; i < 3; ++i) per_anon[i] = apply_profile(raw[i], per, chain).stream;
  const auto token0 =
      GroundTruth::from_streams(raw[0], per_anon[0]).anon_of(FieldClass::UserId, "emily");
  std::size_t foreign_hits = 0;
  bool per_ok = token0.size() == 1;
  if (per_ok) {
    const MappingClaim per_known{FieldClass::UserId, token0[0], "emily", 32,
                                 AttackKind::KnownMapping, 1.0};
    for (const auto& hit : propagate_known_mappings(per_anon, per_known).hits) {
      if (hit.stream != 0) ++foreign_hits;
    }
    per_ok = foreign_hits == 0;
  }

  // Class namespaces: a username token never collides with the same string
  // pseudonymized in another text field.
  const auto split = profile_of(
      "profile split\nscope cross-log\nkey shared logveil.key\nfield text level 1\n");
  LogStream split_anon[3];
  for (int i = 0; i < 3; ++i) split_anon[i] = apply_profile(raw[i], split, chain).stream;
  const auto user_token =
      GroundTruth::from_streams(raw[0], split_anon[0]).anon_of(FieldClass::UserId, "emily");
  const auto text_token = GroundTruth::from_streams(raw[2], split_anon[2])
                              .anon_of(FieldClass::FreeText, "emily");
  std::size_t cross_field_hits = 0;
  bool split_ok = user_token.size() == 1 && text_token.size() == 1 &&
                  user_token[0] != text_token[0];
  if (split_ok) {
    const MappingClaim split_known{FieldClass::UserId, user_token[0], "emily", 32,
                                   AttackKind::KnownMapping, 1.0};
    for (const auto& hit : propagate_known_mappings(split_anon, split_known).hits) {
      if (hit.cls != FieldClass::UserId) ++cross_field_hits;
    }
    split_ok = cross_field_hits == 0;
  }

  std::ostringstream detail;
  detail << "cross-log reveal reached " << swept.hits.size() << "/" << emily_truth
         << " occurrences in " << streams_hit.size() << " streams; per-stream foreign hits "
         << foreign_hits << "; cross-field hits " << cross_field_hits;
  report(6, cross_ok && per_ok && split_ok, detail.str());
}

// --- criterion 7: round trips ----------------------------------------------------------

void criterion_round_trip() {
  const std::pair<std::string, std::vector<std::string>> corpora[] = {
      {"netflow", testsupport::corpus_netflow(kRoundTripLinesPerSchema, 101)},
      {"syslog", testsupport::corpus_syslog(kRoundTripLinesPerSchema, 102)},
      {"clf", testsupport::corpus_clf(kRoundTripLinesPerSchema, 103)},
      {"iptables", testsupport::corpus_iptables(kRoundTripLinesPerSchema, 104)},
  };

  std::size_t accepted = 0;
  std::size_t mismatches = 0;
  std::size_t identity_breaks = 0;
  const auto level0 = profile_of("profile identity\n");

  for (const auto& [schema, lines] : corpora) {
    for (const auto& line : lines) {
      auto outcome = parse_line(schema, line);
      if (!outcome.ok()) continue;
      ++accepted;
      if (serialize(outcome.take_record()) != line) ++mismatches;
    }
    const auto stream = testsupport::must_read(schema, schema, lines);
    std::string original;
    for (const auto& line : lines) {
      original += line;
      original += '\n';
    }
    const auto anon = apply_profile(stream, level0, KeyChain{});
    if (stream_text(anon.stream) != original) ++identity_breaks;
  }

  std::ostringstream detail;
  detail << accepted << " lines accepted across 4 schemas, " << mismatches
         << " re-serialization mismatches, " << identity_breaks
         << " level-0 identity breaks";
  report(7,
         accepted == 4 * kRoundTripLinesPerSchema && mismatches == 0 &&
             identity_breaks == 0,
         detail.str());
}

// --- criterion 8: determinism and parallelism --------------------------------------------

void criterion_determinism() {
  const auto lines = testsupport::corpus_netflow(kDeterminismRecords, 77);
  const auto raw = testsupport::must_read("netflow", "big.netflow", lines);
  const auto profile = profile_of(
      "profile keyed\nscope cross-log\nkey shared logveil.key\n"
      "field ipv4 level 1\nfield port level 1\nfield timestamp level 2\n");
  const KeyChain chain = test_chain();

  ApplyOptions serial;
  serial.workers = 1;
  ApplyOptions parallel;
  parallel.workers = 4;

  const std::string first = stream_text(apply_profile(raw, profile, chain, serial).stream);
  const std::string second = stream_text(apply_profile(raw, profile, chain, serial).stream);
  const std::string forked = stream_text(apply_profile(raw, profile, chain, parallel).stream);

  // Interleaving guard: rank enumeration over multiple inputs must be
  // refused loudly by the tool, not silently merged.
  testsupport::TempDir tmp;
  const auto a = tmp.path() / "a.log";
  const auto b = tmp.path() / "b.log";
  testsupport::write_lines(a, {testsupport::netflow_line(1, "10.0.0.1", "10.0.0.2", 1, 2)});
  testsupport::write_lines(b, {testsupport::netflow_line(2, "10.0.0.3", "10.0.0.4", 3, 4)});
  testsupport::write_file(tmp.path() / "enum.profile",
                          "profile enum\nfield timestamp level 3\n");
  const auto refused = testsupport::run_cli(
      {"anonymize", a.string(), b.string(), "--schema", "netflow", "--profile",
       (tmp.path() / "enum.profile").string()});

  std::ostringstream detail;
  detail << kDeterminismRecords << " records: repeat run "
         << (second == first ? "identical" : "diverged") << ", 4-worker run "
         << (forked == first ? "identical" : "diverged")
         << ", interleaved enumeration exit " << refused.status;
  report(8, second == first && forked == first && refused.status == 4, detail.str());
}

// --- criterion 9: attack monotonicity matrix ----------------------------------------------

struct MatrixKey {
  std::string attack;
  std::string profile;
  bool operator<(const MatrixKey& o) const {
    return std::tie(attack, profile) < std::tie(o.attack, o.profile);
  }
};

std::size_t parse_tp(const std::string& report_text, const std::string& kind, bool& found) {
  std::istringstream in(report_text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("attack " + kind + ":", 0) != 0) continue;
    const auto at = line.find(" tp=");
    if (at == std::string::npos) break;
    found = true;
    return static_cast<std::size_t>(std::strtoull(line.c_str() + at + 4, nullptr, 10));
  }
  found = false;
  return 0;
}

void criterion_attack_matrix() {
  const char* profile_dir_env = std::getenv("LOGVEIL_PROFILE_DIR");
  if (profile_dir_env == nullptr || *profile_dir_env == '\0') {
    report(9, false, "LOGVEIL_PROFILE_DIR is not set");
    return;
  }
  const fs::path profile_dir(profile_dir_env);

  testsupport::TempDir tmp;
  save_key(testsupport::test_key(), tmp.path() / "logveil.key", true);

  // One shared fixture suite: a service host and a scan and an injected
  // probe run inside netflow, the same server on the firewall, one user
  // across two web logs and an auth log.
  auto flows = testsupport::web_fixture("192.168.77.29", 950, 50);
  const auto scan = testsupport::scan_fixture("198.18.0.1", 0x0a030700u, 256,
                                              1'600'000'000LL);
  flows.insert(flows.end(), scan.begin(), scan.end());
  const auto probes = inject_generate(InjectionPattern{}, *parse_ipv4("10.60.0.14"), 8,
                                      *parse_ipv4("198.51.100.77"),
                                      UtcMicros{1'600'010'000LL * kMicrosPerSecond});
  for (const auto& rec : probes.records) flows.push_back(serialize(rec));
  const auto background = testsupport::background_fixture(2000, 13, 1'600'020'000LL);
  flows.insert(flows.end(), background.begin(), background.end());

  const std::vector<std::string> fw = {
      "Mar 14 09:26:53 fw1 kernel: [111.42] DROP IN=eth0 OUT= SRC=10.32.0.7 "
      "DST=192.168.77.29 LEN=60 TOS=0x00 TTL=64 PROTO=TCP SPT=51022 DPT=80 WINDOW=65535 SYN",
      "Mar 14 09:27:10 fw1 kernel: [112.42] DROP IN=eth0 OUT= SRC=192.168.77.29 "
      "DST=10.32.0.9 LEN=60 TOS=0x00 TTL=64 PROTO=TCP SPT=80 DPT=51023 WINDOW=65535 SYN",
  };
  const std::vector<std::string> web1 = {
      "10.0.0.5 - emily [10/Oct/2000:13:55:36 +0000] \"GET / HTTP/1.0\" 200 7",
      "10.0.0.6 - frank [10/Oct/2000:13:55:40 +0000] \"GET / HTTP/1.0\" 200 7",
  };
  const std::vector<std::string> web2 = {
      "10.1.0.5 - emily [11/Oct/2000:09:00:00 +0000] \"GET / HTTP/1.0\" 200 7",
  };
  const std::vector<std::string> auth = {
      "Oct 11 09:02:00 gw emily",
      "Oct 11 09:02:30 gw frank logged in",
  };

  testsupport::write_lines(tmp.path() / "flows.log", flows);
  testsupport::write_lines(tmp.path() / "fw.log", fw);
  testsupport::write_lines(tmp.path() / "web1.log", web1);
  testsupport::write_lines(tmp.path() / "web2.log", web2);
  testsupport::write_lines(tmp.path() / "auth.log", auth);

  const std::vector<std::string> profiles = {"internal", "students", "research-partner",
                                             "public"};
  const std::vector<std::string> attacks = {"fingerprint", "structure", "prefix",
                                            "known-mapping", "injection"};
  // The field class each attack reads; monotonicity is judged along it.
  const std::map<std::string, FieldClass> carrier = {
      {"fingerprint", FieldClass::PortDst},
      {"injection", FieldClass::PortDst},
      {"structure", FieldClass::Ipv4Dst},
      {"prefix", FieldClass::Ipv4Dst},
      {"known-mapping", FieldClass::Ipv4Dst},
  };

  std::map<MatrixKey, std::size_t> tp;
  std::map<std::string, int> carrier_level;  // "<attack>/<profile>"
  std::vector<std::string> problems;

  for (const auto& name : profiles) {
    const fs::path profile_path = profile_dir / (name + ".profile");
    Profile parsed = load_profile_file(profile_path);
    for (const auto& kind : attacks) {
      carrier_level[kind + "/" + name] = parsed.assignment(carrier.at(kind)).level;
      const fs::path out = tmp.path() / ("report-" + name + "-" + kind + ".txt");
      const auto run = testsupport::run_cli(
          {"attack",      "evaluate",
           (tmp.path() / "flows.log").string(),
           (tmp.path() / "fw.log").string(),
           (tmp.path() / "web1.log").string(),
           (tmp.path() / "web2.log").string(),
           (tmp.path() / "auth.log").string(),
           "--schema",    "netflow",
           "--schema",    "iptables",
           "--schema",    "clf",
           "--schema",    "clf",
           "--schema",    "syslog",
           "--profile",   profile_path.string(),
           "--keys",      tmp.path().string(),
           "--attack",    kind,
           "--server",    "192.168.77.29",
           "--reveal",    "192.168.77.29",
           "--reveal",    "emily",
           "--reveal",    "10.3.7.23",
           "--inject-target", "10.60.0.14",
           "--output",    out.string()});
      if (run.status != 0 && run.status != 6) {
        problems.push_back(kind + "/" + name + " exited " + std::to_string(run.status));
        continue;
      }
      bool found = false;
      const std::size_t got = parse_tp(testsupport::read_file(out), kind, found);
      if (!found) {
        problems.push_back(kind + "/" + name + " produced no score line");
        continue;
      }
      tp[{kind, name}] = got;
    }
  }

  // No attack may gain true positives when its carrier's level rises.
  for (const auto& kind : attacks) {
    for (const auto& a : profiles) {
      for (const auto& b : profiles) {
        const auto ta = tp.find({kind, a});
        const auto tb = tp.find({kind, b});
        if (ta == tp.end() || tb == tp.end()) continue;
        if (carrier_level[kind + "/" + b] > carrier_level[kind + "/" + a] &&
            tb->second > ta->second) {
          problems.push_back(kind + " tp rose " + std::to_string(ta->second) + "->" +
                             std::to_string(tb->second) + " from " + a + " to " + b);
        }
      }
    }
  }

  // The expected row values for this fixture suite, pinned.
  const auto expect = [&](const std::string& kind, std::size_t i0, std::size_t s1,
                          std::size_t r2, std::size_t p3) {
    const std::size_t got[4] = {tp[{kind, "internal"}], tp[{kind, "students"}],
                                tp[{kind, "research-partner"}], tp[{kind, "public"}]};
    const std::size_t want[4] = {i0, s1, r2, p3};
    for (int i = 0; i < 4; ++i) {
      if (got[i] != want[i]) {
        problems.push_back(kind + " tp[" + profiles[static_cast<std::size_t>(i)] +
                           "]=" + std::to_string(got[i]) + " wanted " +
                           std::to_string(want[i]));
      }
    }
  };
  expect("fingerprint", 1, 1, 0, 0);
  expect("structure", 256, 256, 256, 0);
  expect("injection", 1, 1, 0, 0);
  expect("known-mapping", 2, 2, 2, 0);
  const std::size_t prefix_base = tp[{"prefix", "internal"}];
  if (prefix_base == 0) problems.push_back("prefix recovered nothing at level 0");
  if (tp[{"prefix", "students"}] != prefix_base ||
      tp[{"prefix", "research-partner"}] != prefix_base) {
    problems.push_back("prefix tp drifted across prefix-preserving profiles");
  }
  if (tp[{"prefix", "public"}] != 0) problems.push_back("prefix tp nonzero under black");

  std::ostringstream detail;
  if (problems.empty()) {
    detail << "20 evaluate runs, tp monotone along every carrier ladder (prefix row "
           << prefix_base << ")";
  } else {
    detail << problems.size() << " violations:";
    for (const auto& p : problems) detail << ' ' << p << ';';
  }
  report(9, problems.empty(), detail.str());
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    void (*run)();
  };
  const Criterion criteria[] = {
      {1, criterion_prefix_preservation},
      {2, criterion_bijectivity},
      {3, criterion_fingerprint_example},
      {4, criterion_structure_recognition},
      {5, criterion_injection},
      {6, criterion_known_mapping},
      {7, criterion_round_trip},
      {8, criterion_determinism},
      {9, criterion_attack_matrix},
  };
  for (const auto& c : criteria) {
    try {
      c.run();
    } catch (const std::exception& e) {
      report(c.number, false, std::string("exception: ") + e.what());
    }
  }
  return g_failures == 0 ? 0 : 1;
}
