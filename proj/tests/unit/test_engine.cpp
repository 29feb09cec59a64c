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

#include <sstream>

#include "doctest.h"
#include "logveil/engine.hpp"
#include "logveil/parsers.hpp"
#include "logveil/prefix_preserving.hpp"
#include "logveil/prf.hpp"
#include "logveil/primitives.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace logveil;

namespace {

Profile profile_of(const std::string& text) {
  std::istringstream in(text);
  return load_profile(in);
}

KeyChain chain_with_test_key() {
  KeyChain chain;
  chain.add(testsupport::test_key());
  return chain;
}

std::string stream_text(const LogStream& stream) {
  std::ostringstream out;
  write_stream(out, stream);
  return out.str();
}

}  // namespace

TEST_CASE("a level-zero profile is a byte identity") {
  const auto lines = testsupport::corpus_netflow(200, 31);
  const auto stream = testsupport::must_read("netflow", "flows", lines);
  const auto profile = profile_of("profile nothing\n");

  const auto result = apply_profile(stream, profile, KeyChain{});
  CHECK(stream_text(result.stream) == stream_text(stream));
  CHECK(result.report.records == 200);
  CHECK(result.report.profile_name == "nothing");
  CHECK_FALSE(result.report.sequential_stage);
  for (const std::size_t n : result.report.transformed) CHECK(n == 0);
}

TEST_CASE("keyed transforms rewrite the right classes") {
  const auto stream = testsupport::must_read(
      "netflow", "flows",
      {
          testsupport::netflow_line(1'600'000'000, "10.0.0.5", "192.168.77.29", 51022, 80),
          testsupport::netflow_line(1'600'000'007, "10.0.0.6", "192.168.77.29", 51023, 80),
          testsupport::netflow_line(1'600'000'019, "10.0.0.9", "10.1.2.3", 33000, 8080),
      });
  const auto profile = profile_of(
      "profile students\n"
      "scope cross-log\n"
      "key shared logveil.key\n"
      "field ipv4 level 1\n"
      "field port level 1\n"
      "field timestamp level 2\n");

  const auto result = apply_profile(stream, profile, chain_with_test_key());
  const auto& recs = result.stream.records;
  REQUIRE(recs.size() == 3);

  HmacSha256Prf prf(testsupport::test_key());
  PrefixPreservingPermutation pp(prf);

  // Addresses take their pinned prefix-preserving images.
  CHECK(recs[0].field(2).value.address() == pp.anonymize(*parse_ipv4("10.0.0.5")));
  CHECK(recs[0].field(3).value.address() == pp.anonymize(*parse_ipv4("192.168.77.29")));
  // Agreement structure survives.
  CHECK(testsupport::lcp_oracle(recs[0].field(2).value.address().bits,
                                recs[1].field(2).value.address().bits) ==
        testsupport::lcp_oracle(0x0a000005u, 0x0a000006u));
  CHECK(recs[0].field(3).value == recs[1].field(3).value);

  // Bilateral ports: the well-known service port survives, ephemerals move.
  CHECK(recs[0].field(5).value.port() == Port{80});
  CHECK(recs[0].field(4).value.port() == port_bilateral(Port{51022}, prf));
  CHECK(recs[2].field(5).value.port() == port_bilateral(Port{8080}, prf));

  // The rigid shift keeps every gap.
  const std::int64_t offset = ts_shift_offset(prf, "flows");
  CHECK(recs[0].field(0).value.time().count ==
        1'600'000'000 * kMicrosPerSecond + offset);
  CHECK(recs[1].field(0).value.time().count - recs[0].field(0).value.time().count ==
        7 * kMicrosPerSecond);

  // Transform counts: 2 addresses, 2 ports, 2 times per record.
  CHECK(result.report.transformed[static_cast<std::size_t>(FieldClass::Ipv4Src)] == 3);
  CHECK(result.report.transformed[static_cast<std::size_t>(FieldClass::Ipv4Dst)] == 3);
  CHECK(result.report.transformed[static_cast<std::size_t>(FieldClass::Timestamp)] == 6);
  CHECK(result.report.transformed[static_cast<std::size_t>(FieldClass::Protocol)] == 0);

  const std::string text = result.report.to_text();
  CHECK(text.find("profile: students\n") != std::string::npos);
  CHECK(text.find("records: 3\n") != std::string::npos);
}

TEST_CASE("text pseudonyms respect class namespaces and the dash convention") {
  const auto stream = testsupport::must_read(
      "clf", "web",
      {
          "10.0.0.5 - emily [10/Oct/2000:13:55:36 +0000] \"GET / HTTP/1.0\" 200 7",
          "10.0.0.5 - - [10/Oct/2000:13:55:37 +0000] \"GET / HTTP/1.0\" 200 7",
      });
  const auto profile = profile_of(
      "profile texts\n"
      "key shared logveil.key\n"
      "field user-id level 1\n");

  const auto result = apply_profile(stream, profile, chain_with_test_key());
  HmacSha256Prf prf(testsupport::test_key());

  CHECK(result.stream.records[0].field(2).value.text() ==
        keyed_pseudonym("emily", prf, "user-id"));
  // "-" is the format's own absence marker and must never be pseudonymized.
  CHECK(result.stream.records[0].field(1).value.text() == "-");
  CHECK(result.stream.records[1].field(2).value.text() == "-");

  const auto legacy = apply_profile(
      stream,
      profile_of("profile legacy\nkey shared logveil.key\n"
                 "field user-id level 1 param=namespace:legacy\n"),
      chain_with_test_key());
  CHECK(legacy.stream.records[0].field(2).value.text() ==
        keyed_pseudonym("emily", prf, kLegacyNamespace));
}

TEST_CASE("per-stream scope separates streams, cross-log scope joins them") {
  const std::vector<std::string> lines = {
      testsupport::netflow_line(1000, "10.0.0.5", "10.0.0.9", 40000, 80)};
  const auto a = testsupport::must_read("netflow", "east", lines);
  const auto b = testsupport::must_read("netflow", "west", lines);

  const std::string base =
      "key shared logveil.key\n"
      "field ipv4 level 1\n";
  const auto cross = profile_of("profile cross\nscope cross-log\n" + base);
  const auto per = profile_of("profile per\nscope per-stream\n" + base);
  const KeyChain chain = chain_with_test_key();

  const auto cross_a = apply_profile(a, cross, chain);
  const auto cross_b = apply_profile(b, cross, chain);
  CHECK(cross_a.stream.records[0].field(2).value ==
        cross_b.stream.records[0].field(2).value);

  const auto per_a = apply_profile(a, per, chain);
  const auto per_b = apply_profile(b, per, chain);
  CHECK(per_a.stream.records[0].field(2).value != per_b.stream.records[0].field(2).value);
  CHECK(per_a.stream.records[0].field(2).value != cross_a.stream.records[0].field(2).value);

  // Inside one stream the map is still consistent either way.
  const LogStream raw_arr[] = {a, b};
  const LogStream cross_arr[] = {cross_a.stream, cross_b.stream};
  const LogStream per_arr[] = {per_a.stream, per_b.stream};
  CHECK(check_consistency(raw_arr, cross_arr, cross));
  CHECK(check_consistency(raw_arr, per_arr, per));
  // Cross-log consistency fails on the per-stream output, and per-stream
  // independence fails on the cross-log output.
  CHECK_FALSE(check_consistency(raw_arr, per_arr, cross));
  CHECK_FALSE(check_consistency(raw_arr, cross_arr, per));
}

TEST_CASE("shared sub-boundary ports do not break per-stream independence") {
  const std::vector<std::string> lines = {
      testsupport::netflow_line(1000, "10.0.0.5", "10.0.0.9", 40000, 80)};
  const auto a = testsupport::must_read("netflow", "east", lines);
  const auto b = testsupport::must_read("netflow", "west", lines);
  const auto per = profile_of(
      "profile per\nscope per-stream\nkey shared logveil.key\n"
      "field ipv4 level 1\nfield port level 1\n");
  const KeyChain chain = chain_with_test_key();

  const auto per_a = apply_profile(a, per, chain);
  const auto per_b = apply_profile(b, per, chain);
  // Port 80 is below the boundary in both streams, by design.
  CHECK(per_a.stream.records[0].field(5).value.port() == Port{80});
  CHECK(per_b.stream.records[0].field(5).value.port() == Port{80});

  const LogStream raw_arr[] = {a, b};
  const LogStream per_arr[] = {per_a.stream, per_b.stream};
  CHECK(check_consistency(raw_arr, per_arr, per));
}

TEST_CASE("consistency checking catches a tampered mapping") {
  const auto raw = testsupport::must_read(
      "netflow", "flows",
      {
          testsupport::netflow_line(1000, "10.0.0.5", "10.0.0.9", 40000, 80),
          testsupport::netflow_line(1001, "10.0.0.5", "10.0.0.9", 40001, 80),
      });
  const auto profile = profile_of(
      "profile cross\nscope cross-log\nkey shared logveil.key\nfield ipv4 level 1\n");
  auto result = apply_profile(raw, profile, chain_with_test_key());

  const LogStream raw_arr[] = {raw};
  {
    const LogStream anon_arr[] = {result.stream};
    CHECK(check_consistency(raw_arr, anon_arr, profile));
  }
  // Same raw source address, two different images: inconsistent.
  result.stream.records[1].set_value(2, FieldValue(FieldClass::Ipv4Src, Ipv4{0x01020304u}));
  {
    const LogStream anon_arr[] = {result.stream};
    CHECK_FALSE(check_consistency(raw_arr, anon_arr, profile));
  }
}

TEST_CASE("black markers and truncation need no key") {
  const auto stream = testsupport::must_read(
      "netflow", "flows",
      {testsupport::netflow_line(1000, "10.1.2.3", "10.200.9.1", 40000, 8080)});
  const auto profile = profile_of(
      "profile public\n"
      "field ipv4 level 3 param=bits:8\n"
      "field port level 3\n"
      "field timestamp level 4\n"
      "field count level 1\n"
      "field protocol level 1\n"
      "field status-code level 1\n");

  const auto result = apply_profile(stream, profile, KeyChain{});
  const auto& rec = result.stream.records[0];
  CHECK(rec.field(2).value.render() == "10.0.0.0");
  CHECK(rec.field(3).value.render() == "10.0.0.0");
  CHECK(rec.field(4).value.port() == Port{0});
  CHECK(rec.field(5).value.port() == Port{0});
  CHECK(rec.field(0).value.time() == UtcMicros{0});
  CHECK(rec.field(6).value.text() == "-");
  CHECK(rec.field(7).value.count() == 0);
}

TEST_CASE("missing keys fail loudly at apply time") {
  const auto stream = testsupport::must_read(
      "netflow", "flows",
      {testsupport::netflow_line(1000, "10.0.0.5", "10.0.0.9", 40000, 80)});
  const auto profile = profile_of(
      "profile keyed\nkey other k.key\nfield ipv4 level 1\n");
  CHECK_THROWS_AS(apply_profile(stream, profile, KeyChain{}), KeyError);
}

TEST_CASE("time reduction and enumeration levels") {
  auto stream = testsupport::must_read(
      "netflow", "flows",
      {
          testsupport::netflow_line(7305, "10.0.0.5", "10.0.0.9", 40000, 80),
          testsupport::netflow_line(3600, "10.0.0.6", "10.0.0.9", 40001, 80),
      });

  const auto reduced = apply_profile(
      stream, profile_of("profile r\nfield timestamp level 1 param=unit:hour\n"),
      KeyChain{});
  CHECK(reduced.stream.records[0].field(0).value.time() ==
        UtcMicros{7200 * kMicrosPerSecond});
  CHECK_FALSE(reduced.report.sequential_stage);

  const auto enumerated = apply_profile(
      stream, profile_of("profile e\nfield timestamp level 3\n"), KeyChain{});
  CHECK(enumerated.report.sequential_stage);
  // Record order is preserved; ranks follow time order.
  CHECK(enumerated.stream.records[0].field(0).value.time() ==
        UtcMicros{2 * kMicrosPerSecond});
  CHECK(enumerated.stream.records[1].field(0).value.time() ==
        UtcMicros{1 * kMicrosPerSecond});
}

TEST_CASE("shift saturations are counted") {
  // web.log draws a negative offset under the test key, so times near the
  // epoch clamp to zero.
  HmacSha256Prf prf(testsupport::test_key());
  REQUIRE(ts_shift_offset(prf, "web.log") < 0);

  const auto stream = testsupport::must_read(
      "netflow", "web.log",
      {
          testsupport::netflow_line(1, "10.0.0.5", "10.0.0.9", 40000, 80),
          testsupport::netflow_line(2, "10.0.0.6", "10.0.0.9", 40001, 80),
      });
  const auto result = apply_profile(
      stream,
      profile_of("profile s\nscope cross-log\nkey shared logveil.key\n"
                 "field timestamp level 2\n"),
      chain_with_test_key());

  CHECK(result.report.shift_saturations == 4);  // two time fields per record
  CHECK(result.stream.records[0].field(0).value.time() == UtcMicros{0});
}

TEST_CASE("worker parallelism is invisible in the output") {
  const auto lines = testsupport::corpus_netflow(2000, 77);
  const auto stream = testsupport::must_read("netflow", "flows", lines);
  const auto profile = profile_of(
      "profile students\nscope cross-log\nkey shared logveil.key\n"
      "field ipv4 level 1\nfield port level 1\nfield timestamp level 2\n");
  const KeyChain chain = chain_with_test_key();

  const auto serial = apply_profile(stream, profile, chain, ApplyOptions{1});
  const auto parallel = apply_profile(stream, profile, chain, ApplyOptions{4});
  const auto all_cores = apply_profile(stream, profile, chain, ApplyOptions{0});

  CHECK(stream_text(serial.stream) == stream_text(parallel.stream));
  CHECK(stream_text(serial.stream) == stream_text(all_cores.stream));
  CHECK(serial.report.transformed == parallel.report.transformed);
}
