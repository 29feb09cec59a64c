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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "logveil/engine.hpp"
#include "logveil/key.hpp"
#include "logveil/parsers.hpp"
#include "logveil/prefix_preserving.hpp"
#include "logveil/prf.hpp"
#include "logveil/primitives.hpp"
#include "logveil/profile.hpp"

namespace {

using namespace logveil;

AnonKey bench_key() {
  std::array<std::uint8_t, kKeyBytes> bytes{};
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(i);
  return AnonKey::from_bytes("bench", bytes);
}

void bm_prefix_preserving(benchmark::State& state) {
  const AnonKey key = bench_key();
  HmacSha256Prf prf(key);
  PrefixPreservingPermutation pp(prf);
  std::uint32_t addr = 0x0a000001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pp.anonymize(Ipv4{addr}).bits);
    addr = addr * 1664525u + 1013904223u;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(bm_prefix_preserving);

void bm_port_bilateral(benchmark::State& state) {
  const AnonKey key = bench_key();
  HmacSha256Prf prf(key);
  std::uint16_t port = 443;
  for (auto _ : state) {
    benchmark::DoNotOptimize(port_bilateral(port, prf));
    port = static_cast<std::uint16_t>(port * 25173u + 13849u);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(bm_port_bilateral);

void bm_keyed_pseudonym(benchmark::State& state) {
  const AnonKey key = bench_key();
  HmacSha256Prf prf(key);
  const std::vector<std::string> names = {"alice", "bob", "carol", "dan", "erin"};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(keyed_pseudonym(names[i % names.size()], prf, "user-id"));
    ++i;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(bm_keyed_pseudonym);

std::string flow_line(std::uint32_t n) {
  std::ostringstream line;
  line << 100000 + n << ',' << 100001 + n << ",10." << (n >> 16 & 0xff) << '.'
       << (n >> 8 & 0xff) << '.' << (n & 0xff) << ",192.168.1." << (n % 250 + 1) << ','
       << (1024 + n % 60000) << ",443,tcp,4,512";
  return line.str();
}

void bm_parse_netflow(benchmark::State& state) {
  std::vector<std::string> lines;
  for (std::uint32_t n = 0; n < 512; ++n) lines.push_back(flow_line(n));
  std::size_t i = 0;
  for (auto _ : state) {
    auto outcome = parse_netflow(lines[i % lines.size()]);
    benchmark::DoNotOptimize(outcome.ok());
    ++i;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(bm_parse_netflow);

void bm_apply_profile(benchmark::State& state) {
  std::ostringstream text;
  for (std::uint32_t n = 0; n < 10000; ++n) text << flow_line(n) << '\n';
  std::istringstream in(text.str());
  const auto read = read_stream(in, "netflow", "bench");

  std::istringstream ptext(
      "profile bench\nscope cross-log\nkey bench bench.key\n"
      "field ipv4 level 1\nfield port level 1\nfield timestamp level 2\n");
  const Profile profile = load_profile(ptext);
  KeyChain chain;
  chain.add(bench_key());

  ApplyOptions options;
  options.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_profile(read.stream, profile, chain, options));
  }
  state.SetItemsProcessed(
      static_cast<std::int64_t>(state.iterations() * read.stream.records.size()));
}
BENCHMARK(bm_apply_profile)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
