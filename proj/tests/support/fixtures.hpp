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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "logveil/field.hpp"
#include "logveil/key.hpp"
#include "logveil/record.hpp"

namespace testsupport {

// Self-deleting scratch directory under the system temp root.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

// Path of the binary under test, from LOGVEIL_CLI_PATH (set by the build).
std::filesystem::path cli_path();

// Runs the binary with the given arguments; extra_env entries are literal
// "NAME=value" prefixes.
CliResult run_cli(const std::vector<std::string>& args,
                  const std::vector<std::string>& extra_env = {});

void write_file(const std::filesystem::path& path, const std::string& content);
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);
std::string read_file(const std::filesystem::path& path);

// Key with bytes 00 01 02 .. 1f; every pinned vector in the tests assumes it.
logveil::AnonKey test_key(std::string id = "shared");

// One flow record line: start,end,srcaddr,dstaddr,srcport,dstport,proto,packets,bytes.
std::string netflow_line(std::int64_t start_s, const std::string& src, const std::string& dst,
                         std::uint16_t sport, std::uint16_t dport,
                         const std::string& proto = "tcp", std::uint64_t packets = 1,
                         std::uint64_t bytes = 40);

// Web-server trace: `server` receives `service` flows on service_port and
// `other` flows elsewhere, interleaved with low-share background hosts.
std::vector<std::string> web_fixture(const std::string& server, std::size_t service,
                                     std::size_t other, std::uint16_t service_port = 80);

// Sequential probe of count consecutive addresses starting at base, one
// probe per step_s seconds.
std::vector<std::string> scan_fixture(const std::string& scanner, std::uint32_t base,
                                      std::size_t count, std::int64_t start_s,
                                      std::int64_t step_s = 1);

// Background flow noise; each source talks to its own small destination
// pool so no accidental scan shape emerges.
std::vector<std::string> background_fixture(std::size_t count, std::uint32_t seed,
                                            std::int64_t start_s = 100000);

// Valid line corpora, one parser each, shape-varied via the seed.
std::vector<std::string> corpus_netflow(std::size_t count, std::uint32_t seed);
std::vector<std::string> corpus_syslog(std::size_t count, std::uint32_t seed);
std::vector<std::string> corpus_clf(std::size_t count, std::uint32_t seed);
std::vector<std::string> corpus_iptables(std::size_t count, std::uint32_t seed);

// Parses one line under the named schema or aborts the test.
logveil::LogRecord must_parse(const std::string& schema, const std::string& line);

// Parses a whole fixture into a stream, rejecting nothing.
logveil::LogStream must_read(const std::string& schema, const std::string& label,
                             const std::vector<std::string>& lines);

}  // namespace testsupport
