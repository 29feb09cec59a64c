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

#include "fixtures.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "logveil/parsers.hpp"

namespace testsupport {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "logveil-test-XXXXXX").string();
  if (mkdtemp(tmpl.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed for " + tmpl);
  }
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);  // best effort; leftovers are /tmp noise
}

fs::path cli_path() {
  const char* env = std::getenv("LOGVEIL_CLI_PATH");
  if (env == nullptr || *env == '\0') {
    throw std::runtime_error("LOGVEIL_CLI_PATH is not set");
  }
  return fs::path(env);
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (const char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args,
                  const std::vector<std::string>& extra_env) {
  static int serial = 0;
  const fs::path base = fs::temp_directory_path() /
                        ("logveil-cli-" + std::to_string(getpid()) + "-" +
                         std::to_string(serial++));
  const fs::path out_path = base.string() + ".out";
  const fs::path err_path = base.string() + ".err";

  std::string cmd;
  for (const auto& e : extra_env) cmd += e + " ";
  cmd += shell_quote(cli_path().string());
  for (const auto& a : args) {
    cmd += ' ';
    cmd += shell_quote(a);
  }
  cmd += " >" + shell_quote(out_path.string()) + " 2>" + shell_quote(err_path.string());

  const int rc = std::system(cmd.c_str());

  CliResult result;
  if (rc == -1) {
    result.status = -1;
  } else if (WIFEXITED(rc)) {
    result.status = WEXITSTATUS(rc);
  } else {
    result.status = 128;  // signal or other abnormal end
  }
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::error_code ec;
  fs::remove(out_path, ec);
  fs::remove(err_path, ec);
  return result;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& line : lines) out << line << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

logveil::AnonKey test_key(std::string id) {
  std::array<std::uint8_t, logveil::kKeyBytes> bytes{};
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(i);
  return logveil::AnonKey::from_bytes(std::move(id), bytes);
}

std::string netflow_line(std::int64_t start_s, const std::string& src, const std::string& dst,
                         std::uint16_t sport, std::uint16_t dport, const std::string& proto,
                         std::uint64_t packets, std::uint64_t bytes) {
  std::ostringstream out;
  out << start_s << ',' << start_s + 1 << ',' << src << ',' << dst << ',' << sport << ','
      << dport << ',' << proto << ',' << packets << ',' << bytes;
  return out.str();
}

namespace {

std::string quad(std::uint32_t bits) {
  return logveil::format_ipv4(logveil::Ipv4{bits});
}

}  // namespace

std::vector<std::string> web_fixture(const std::string& server, std::size_t service,
                                     std::size_t other, std::uint16_t service_port) {
  std::vector<std::string> lines;
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::uint32_t> client(0x0a200001u, 0x0a2000ffu);  // 10.32.0.x
  std::uniform_int_distribution<int> eph(20000, 60000);
  std::int64_t t = 1000;

  for (std::size_t i = 0; i < service; ++i) {
    lines.push_back(netflow_line(t++, quad(client(rng)), server,
                                 static_cast<std::uint16_t>(eph(rng)), service_port));
  }
  for (std::size_t i = 0; i < other; ++i) {
    lines.push_back(netflow_line(t++, quad(client(rng)), server,
                                 static_cast<std::uint16_t>(eph(rng)),
                                 static_cast<std::uint16_t>(3000 + i % 40)));
  }
  // Two chatty hosts far below the share threshold, busier ones first so
  // ranking has something to get wrong.  Port parity is decoupled from
  // host parity: each noisy host sees a 50% service-port mix.
  const std::string noisy1 = "10.40.0.9";
  const std::string noisy2 = "10.40.0.10";
  for (std::size_t i = 0; i < (service + other) / 4; ++i) {
    const std::uint16_t port = (i / 2 % 2 == 0) ? service_port : 25;
    lines.push_back(netflow_line(t++, quad(client(rng)), (i % 2 == 0) ? noisy1 : noisy2,
                                 static_cast<std::uint16_t>(eph(rng)), port));
  }
  return lines;
}

std::vector<std::string> scan_fixture(const std::string& scanner, std::uint32_t base,
                                      std::size_t count, std::int64_t start_s,
                                      std::int64_t step_s) {
  std::vector<std::string> lines;
  lines.reserve(count);
  for (std::size_t q = 0; q < count; ++q) {
    lines.push_back(netflow_line(start_s + static_cast<std::int64_t>(q) * step_s, scanner,
                                 quad(base + static_cast<std::uint32_t>(q)),
                                 static_cast<std::uint16_t>(40000 + q % 1000), 22));
  }
  return lines;
}

std::vector<std::string> background_fixture(std::size_t count, std::uint32_t seed,
                                            std::int64_t start_s) {
  std::vector<std::string> lines;
  lines.reserve(count);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> src_pick(0, 199);
  std::uniform_int_distribution<int> dst_pick(0, 19);
  std::uniform_int_distribution<int> sport(10000, 59999);
  std::uniform_int_distribution<int> step(1, 9);
  // Destination ports chosen clear of small Fibonacci values and the
  // fingerprinted service band.
  std::uniform_int_distribution<int> dport(2000, 2999);

  std::int64_t t = start_s;
  for (std::size_t i = 0; i < count; ++i) {
    const int s = src_pick(rng);
    // Each source owns a 20-address slice; 20 distinct destinations can
    // never look like a scan to a 64-destination detector.
    const std::uint32_t src = 0x0a500000u + static_cast<std::uint32_t>(s);
    const std::uint32_t dst =
        0x0a600000u + static_cast<std::uint32_t>(s * 20 + dst_pick(rng));
    t += step(rng);
    lines.push_back(netflow_line(t, quad(src), quad(dst),
                                 static_cast<std::uint16_t>(sport(rng)),
                                 static_cast<std::uint16_t>(dport(rng))));
  }
  return lines;
}

std::vector<std::string> corpus_netflow(std::size_t count, std::uint32_t seed) {
  std::vector<std::string> lines;
  lines.reserve(count);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> addr;
  std::uniform_int_distribution<int> port(0, 65535);
  std::uniform_int_distribution<std::int64_t> when(0, 4102444800LL);
  std::uniform_int_distribution<int> frac_digits(0, 6);
  std::uniform_int_distribution<int> frac(0, 999999);
  std::uniform_int_distribution<std::uint64_t> size(0, 1u << 30);
  const char* protos[] = {"tcp", "udp", "icmp", "6", "17"};

  for (std::size_t i = 0; i < count; ++i) {
    std::ostringstream out;
    const std::int64_t t = when(rng);
    const int digits = frac_digits(rng);
    out << t;
    if (digits > 0) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "%06d", frac(rng));
      out << '.' << std::string(buf, static_cast<std::size_t>(digits));
    }
    out << ',' << t + 1 << ',' << quad(addr(rng)) << ',' << quad(addr(rng)) << ','
        << port(rng) << ',' << port(rng) << ',' << protos[i % 5] << ',' << size(rng) % 10000
        << ',' << size(rng);
    lines.push_back(out.str());
  }
  return lines;
}

namespace {

const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                         "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
const int kMonthDays[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

std::string bsd_stamp(std::mt19937& rng, bool zero_pad) {
  std::uniform_int_distribution<int> month(0, 11);
  std::uniform_int_distribution<int> hour(0, 23);
  std::uniform_int_distribution<int> sixty(0, 59);
  const int m = month(rng);
  std::uniform_int_distribution<int> day(1, kMonthDays[m]);
  const int d = day(rng);
  char buf[32];
  if (zero_pad) {
    std::snprintf(buf, sizeof buf, "%s %02d %02d:%02d:%02d", kMonths[m], d, hour(rng),
                  sixty(rng), sixty(rng));
  } else {
    std::snprintf(buf, sizeof buf, "%s %2d %02d:%02d:%02d", kMonths[m], d, hour(rng),
                  sixty(rng), sixty(rng));
  }
  return buf;
}

}  // namespace

std::vector<std::string> corpus_syslog(std::size_t count, std::uint32_t seed) {
  std::vector<std::string> lines;
  lines.reserve(count);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pri(0, 191);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> pid(1, 65000);
  const char* hosts[] = {"gw", "mail.example.org", "db-3", "edge01"};
  const char* tags[] = {"sshd", "cron", "kernel", "postfix/smtpd"};
  const char* bodies[] = {"Accepted password for alice from 10.1.2.3 port 51022 ssh2",
                          "session opened for user root", "connection refused",
                          "disk usage 82%"};

  for (std::size_t i = 0; i < count; ++i) {
    std::ostringstream out;
    if (i % 3 == 0) out << '<' << pri(rng) << '>';
    out << bsd_stamp(rng, i % 2 == 0) << ' ' << hosts[pick(rng)] << ' ' << tags[pick(rng)]
        << '[' << pid(rng) << "]: " << bodies[pick(rng)];
    lines.push_back(out.str());
  }
  return lines;
}

std::vector<std::string> corpus_clf(std::size_t count, std::uint32_t seed) {
  std::vector<std::string> lines;
  lines.reserve(count);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> addr;
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> day(1, 28);
  std::uniform_int_distribution<int> hour(0, 23);
  std::uniform_int_distribution<int> sixty(0, 59);
  std::uniform_int_distribution<int> year(1998, 2025);
  std::uniform_int_distribution<std::uint64_t> bytes(0, 5000000);
  const char* users[] = {"-", "frank", "emily", "ops"};
  const char* reqs[] = {"GET / HTTP/1.0", "GET /index.html HTTP/1.1",
                        "POST /login HTTP/1.1", "HEAD /status HTTP/1.0"};
  const char* zones[] = {"+0000", "-0500", "+0130", "+0900"};
  const int statuses[] = {200, 304, 404, 500};

  for (std::size_t i = 0; i < count; ++i) {
    std::ostringstream out;
    if (i % 5 == 0) {
      out << "host" << i % 7 << ".example.net";
    } else {
      out << quad(addr(rng));
    }
    char stamp[48];
    std::snprintf(stamp, sizeof stamp, "%02d/%s/%04d:%02d:%02d:%02d %s", day(rng),
                  kMonths[pick(rng)], year(rng), hour(rng), sixty(rng), sixty(rng),
                  zones[pick(rng)]);
    out << " - " << users[pick(rng)] << " [" << stamp << "] \"" << reqs[pick(rng)] << "\" "
        << statuses[pick(rng)] << ' ';
    if (i % 4 == 0) {
      out << '-';
    } else {
      out << bytes(rng);
    }
    lines.push_back(out.str());
  }
  return lines;
}

std::vector<std::string> corpus_iptables(std::size_t count, std::uint32_t seed) {
  std::vector<std::string> lines;
  lines.reserve(count);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> addr;
  std::uniform_int_distribution<int> port(1, 65535);
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> ttl(30, 128);
  const char* hosts[] = {"fw1", "edge01", "gw"};
  const char* protos[] = {"TCP", "UDP", "ICMP"};

  for (std::size_t i = 0; i < count; ++i) {
    std::ostringstream out;
    const int p = pick(rng);
    out << bsd_stamp(rng, i % 2 == 1) << ' ' << hosts[pick(rng)]
        << " kernel: [" << i << ".42] DROP IN=eth0 OUT= SRC=" << quad(addr(rng))
        << " DST=" << quad(addr(rng)) << " LEN=60 TOS=0x00 TTL=" << ttl(rng)
        << " PROTO=" << protos[p];
    if (p != 2) {
      out << " SPT=" << port(rng) << " DPT=" << port(rng) << " WINDOW=65535 SYN";
    }
    lines.push_back(out.str());
  }
  return lines;
}

logveil::LogRecord must_parse(const std::string& schema, const std::string& line) {
  auto outcome = logveil::parse_line(schema, line);
  if (!outcome.ok()) {
    throw std::runtime_error("fixture line rejected (" + outcome.rejected().reason +
                             "): " + line);
  }
  return outcome.take_record();
}

logveil::LogStream must_read(const std::string& schema, const std::string& label,
                             const std::vector<std::string>& lines) {
  std::ostringstream joined;
  for (const auto& line : lines) joined << line << '\n';
  std::istringstream in(joined.str());
  auto result = logveil::read_stream(in, schema, label);
  if (!result.rejects.empty()) {
    throw std::runtime_error("fixture rejected at line " +
                             std::to_string(result.rejects.front().first) + ": " +
                             result.rejects.front().second);
  }
  return std::move(result.stream);
}

}  // namespace testsupport
