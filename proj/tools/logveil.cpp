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

// Command-line front end.  Exit statuses are a stable contract:
//   0  success
//   1  usage error, or strict-mode parse rejects
//   2  keygen refused to overwrite (or could not write) a key file
//   3  unreadable input, unwritable output, missing ground truth
//   4  invalid profile, or a profile/input conflict (timestamp enumeration
//      over multiple interleaved inputs)
//   5  missing or unloadable key material
//   6  a selected attack's carrier was destroyed by the profile

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logveil/attack.hpp"
#include "logveil/engine.hpp"
#include "logveil/parsers.hpp"
#include "logveil/profile.hpp"
#include "logveil/xml.hpp"

namespace {

using namespace logveil;

// Diagnostics go to stderr so data output stays machine-consumable.
std::ostream& diag() { return std::cerr; }

struct StreamSet {
  std::vector<LogStream> streams;
  std::vector<ReadResult> reads;  // aligned with streams; holds rejects
};

// One --schema value applies to every input; otherwise one per input.
std::optional<std::string> schema_for(const std::vector<std::string>& schemas,
                                      std::size_t index, std::size_t inputs) {
  if (schemas.size() == 1) return schemas.front();
  if (schemas.size() == inputs) return schemas[index];
  return std::nullopt;
}

// Reads every input; returns an exit status on failure.  Strict mode stops
// a file at its first bad line and fails the run.
std::optional<int> read_inputs(const std::vector<std::string>& inputs,
                               const std::vector<std::string>& schemas, bool strict,
                               const ParseOptions& opt, StreamSet& out) {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto schema = schema_for(schemas, i, inputs.size());
    if (!schema) {
      diag() << "logveil: got " << schemas.size() << " --schema values for "
             << inputs.size() << " inputs\n";
      return 1;
    }
    std::ifstream in(inputs[i]);
    if (!in) {
      diag() << "logveil: cannot open " << inputs[i] << '\n';
      return 3;
    }
    ReadResult read;
    try {
      read = read_stream(in, *schema, inputs[i],
                         strict ? ParseMode::Strict : ParseMode::Lenient, opt);
    } catch (const SchemaError& e) {
      diag() << "logveil: " << e.what() << '\n';
      return 1;
    }
    if (!read.rejects.empty()) {
      diag() << inputs[i] << ": " << read.rejects.size() << " rejected line"
             << (read.rejects.size() == 1 ? "" : "s") << '\n'
             << reject_report(read);
    }
    if (read.aborted) return 1;
    out.streams.push_back(read.stream);
    out.reads.push_back(std::move(read));
  }
  return std::nullopt;
}

std::optional<Profile> load_profile_or_report(const std::string& path, int& status) {
  try {
    return load_profile_file(path);
  } catch (const ProfileError& e) {
    diag() << path << ':' << e.line << ": " << e.what() << '\n';
    status = 4;
  } catch (const std::exception& e) {
    diag() << "logveil: " << e.what() << '\n';
    status = 3;
  }
  return std::nullopt;
}

std::optional<KeyChain> load_keys_or_report(const Profile& profile,
                                            const std::string& key_dir, int& status) {
  try {
    std::optional<std::filesystem::path> dir;
    if (!key_dir.empty()) dir = key_dir;
    return load_profile_keys(profile, dir);
  } catch (const KeyError& e) {
    diag() << "logveil: " << e.what() << '\n';
    status = 5;
  }
  return std::nullopt;
}

// --- keygen ---------------------------------------------------------------

struct KeygenArgs {
  std::string output;
  std::string id;
  bool force = false;
};

int run_keygen(const KeygenArgs& args) {
  std::string id = args.id;
  if (id.empty()) id = std::filesystem::path(args.output).stem().string();
  if (id.empty() || id.find_first_of("\t\n") != std::string::npos) {
    diag() << "logveil: key id must be non-empty and tab-free\n";
    return 1;
  }
  try {
    const AnonKey key = AnonKey::generate(id);
    save_key(key, args.output, args.force);
    diag() << "wrote " << args.output << " (id " << key.id() << ", digest "
           << key.digest_hex() << ")\n";
  } catch (const KeyExistsError&) {
    diag() << "logveil: refusing to overwrite " << args.output
           << " (pass --force to replace it)\n";
    return 2;
  } catch (const KeyError& e) {
    diag() << "logveil: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

// --- anonymize --------------------------------------------------------------

struct AnonymizeArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> schemas;
  std::string profile;
  std::string key_dir;
  std::string output;
  std::string mode = "native";
  std::string truth;
  std::string report;
  bool strict = false;
  unsigned jobs = 1;
};

int run_anonymize(const AnonymizeArgs& args) {
  int status = 0;
  const auto profile = load_profile_or_report(args.profile, status);
  if (!profile) return status;

  if (profile->assignment(FieldClass::Timestamp).level == 3 && args.inputs.size() > 1) {
    diag() << "logveil: timestamp enumeration needs a single input stream; "
              "interleaved inputs have no global probe order\n";
    return 4;
  }

  const auto keys = load_keys_or_report(*profile, args.key_dir, status);
  if (!keys) return status;

  ParseOptions opt;
  opt.reference_year = profile->assignment(FieldClass::Timestamp).params.reference_year;
  StreamSet raw;
  if (const auto fail = read_inputs(args.inputs, args.schemas, args.strict, opt, raw)) {
    return *fail;
  }

  ApplyOptions apply_opt;
  apply_opt.workers = args.jobs;
  std::vector<LogStream> anonymized;
  std::ostringstream reports;
  GroundTruth truth;
  try {
    for (const auto& stream : raw.streams) {
      auto result = apply_profile(stream, *profile, *keys, apply_opt);
      reports << result.report.to_text();
      if (!args.truth.empty()) truth.accumulate(stream, result.stream);
      anonymized.push_back(std::move(result.stream));
    }
  } catch (const KeyError& e) {
    diag() << "logveil: " << e.what() << '\n';
    return 5;
  }

  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) {
      diag() << "logveil: cannot write " << args.output << '\n';
      return 3;
    }
  }
  std::ostream& out = args.output.empty() ? std::cout : file;
  if (args.mode == "xml") {
    write_streams_xml(out, anonymized, *profile);
  } else {
    for (const auto& stream : anonymized) write_stream(out, stream);
  }
  out.flush();

  if (!args.truth.empty()) {
    std::ofstream sidecar(args.truth);
    if (!sidecar) {
      diag() << "logveil: cannot write " << args.truth << '\n';
      return 3;
    }
    truth.write(sidecar);
  }

  if (!args.report.empty()) {
    std::ofstream report(args.report);
    if (!report) {
      diag() << "logveil: cannot write " << args.report << '\n';
      return 3;
    }
    report << reports.str();
  } else {
    diag() << reports.str();
  }
  return 0;
}

// --- validate ----------------------------------------------------------------

struct ValidateArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> schemas;
  std::string profile;
  bool strict = false;
};

int run_validate(const ValidateArgs& args) {
  if (args.profile.empty() && args.inputs.empty()) {
    diag() << "logveil: validate needs --profile and/or input files\n";
    return 1;
  }
  if (!args.profile.empty()) {
    int status = 0;
    const auto profile = load_profile_or_report(args.profile, status);
    if (!profile) return status;
    std::cout << profile->normalized();
  }
  if (!args.inputs.empty()) {
    if (args.schemas.empty()) {
      diag() << "logveil: validating inputs needs --schema\n";
      return 1;
    }
    StreamSet set;
    if (const auto fail = read_inputs(args.inputs, args.schemas, args.strict, {}, set)) {
      return *fail;
    }
    std::size_t rejects = 0;
    for (const auto& read : set.reads) rejects += read.rejects.size();
    if (rejects > 0) return 1;
  }
  return 0;
}

// --- attack -------------------------------------------------------------------

struct AttackArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> schemas;
  std::string profile;
  std::string key_dir;
  std::string truth;       // sidecar mode: read; evaluate mode: optionally write
  std::string output;
  std::string mode = "native";
  std::string attacks;     // comma-separated kinds; empty = all
  std::vector<std::string> servers;
  unsigned service_port = 80;
  double threshold = 0.95;
  std::vector<std::string> reveals;
  std::string inject_target;
  std::string inject_carrier = "port";
  std::string inject_kind = "fibonacci";
  std::size_t inject_length = 8;
  std::uint64_t inject_seed = 1;
  double inject_gap = 10.0;  // seconds
  double inject_jitter = 0.05;
  std::size_t scan_min = 64;
  double scan_window = 600.0;  // seconds
};

std::optional<EvaluateScenario> build_scenario(const AttackArgs& args) {
  EvaluateScenario scenario;
  std::stringstream names(args.attacks);
  std::string name;
  while (std::getline(names, name, ',')) {
    if (name.empty()) continue;
    const auto kind = attack_kind_from_name(name);
    if (!kind) {
      diag() << "logveil: unknown attack \"" << name << "\"\n";
      return std::nullopt;
    }
    scenario.attacks.insert(*kind);
  }

  scenario.fingerprint.service_port = static_cast<Port>(args.service_port);
  scenario.fingerprint.share_threshold = args.threshold;
  for (const auto& server : args.servers) {
    const auto addr = parse_ipv4(server);
    if (!addr) {
      diag() << "logveil: bad --server address \"" << server << "\"\n";
      return std::nullopt;
    }
    scenario.fingerprint.known_servers.push_back(*addr);
  }

  scenario.scan.min_destinations = args.scan_min;
  scenario.scan.window_micros =
      static_cast<std::int64_t>(args.scan_window * kMicrosPerSecond);

  if (!args.inject_target.empty()) {
    const auto target = parse_ipv4(args.inject_target);
    if (!target) {
      diag() << "logveil: bad --inject-target address\n";
      return std::nullopt;
    }
    InjectionPattern pattern;
    pattern.kind =
        args.inject_kind == "prng" ? SequenceKind::SeededPrng : SequenceKind::Fibonacci;
    pattern.carrier =
        args.inject_carrier == "gap" ? CarrierField::InterArrival : CarrierField::DstPort;
    pattern.length = args.inject_length;
    pattern.seed = args.inject_seed;
    pattern.base_gap_micros = static_cast<std::int64_t>(args.inject_gap * kMicrosPerSecond);
    pattern.jitter = args.inject_jitter;
    try {
      pattern.validate();
    } catch (const std::invalid_argument& e) {
      diag() << "logveil: " << e.what() << '\n';
      return std::nullopt;
    }
    scenario.injection = pattern;
    scenario.injection_target = *target;
  }

  scenario.reveals = args.reveals;
  return scenario;
}

int emit_report(const AttackReport& report, const AttackArgs& args) {
  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) {
      diag() << "logveil: cannot write " << args.output << '\n';
      return 3;
    }
  }
  std::ostream& out = args.output.empty() ? std::cout : file;
  if (args.mode == "xml") {
    report.write_xml(out);
    diag() << report.to_text();  // flat summary stays on the diagnostic channel
  } else {
    out << report.to_text();
  }
  out.flush();
  return report.any_carrier_destroyed() ? 6 : 0;
}

// Scores attacks over already-anonymized inputs against a truth sidecar.
int run_attack_sidecar(const AttackArgs& args) {
  if (args.inputs.empty() || args.schemas.empty()) {
    diag() << "logveil: attack scoring needs input files and --schema\n";
    return 1;
  }
  if (args.truth.empty()) {
    diag() << "logveil: attack scoring needs --truth <sidecar>\n";
    return 3;
  }
  std::ifstream truth_in(args.truth);
  if (!truth_in) {
    diag() << "logveil: cannot open " << args.truth << '\n';
    return 3;
  }
  GroundTruth truth;
  try {
    truth = GroundTruth::read(truth_in);
  } catch (const std::exception& e) {
    diag() << "logveil: " << e.what() << '\n';
    return 3;
  }

  int status = 0;
  std::optional<Profile> profile;
  if (!args.profile.empty()) {
    profile = load_profile_or_report(args.profile, status);
    if (!profile) return status;
  }

  const auto scenario = build_scenario(args);
  if (!scenario) return 1;

  ParseOptions opt;
  if (profile) {
    opt.reference_year = profile->assignment(FieldClass::Timestamp).params.reference_year;
  }
  StreamSet anonymized;
  if (const auto fail = read_inputs(args.inputs, args.schemas, false, opt, anonymized)) {
    return *fail;
  }

  const AttackReport report = score_attacks(anonymized.streams, truth, *scenario,
                                            profile ? &*profile : nullptr);
  return emit_report(report, args);
}

// Anonymizes raw inputs under the profile, then attacks the result.
int run_attack_evaluate(const AttackArgs& args) {
  int status = 0;
  const auto profile = load_profile_or_report(args.profile, status);
  if (!profile) return status;
  const auto keys = load_keys_or_report(*profile, args.key_dir, status);
  if (!keys) return status;

  const auto scenario = build_scenario(args);
  if (!scenario) return 1;

  ParseOptions opt;
  opt.reference_year = profile->assignment(FieldClass::Timestamp).params.reference_year;
  StreamSet raw;
  if (const auto fail = read_inputs(args.inputs, args.schemas, false, opt, raw)) {
    return *fail;
  }

  GroundTruth truth;
  AttackReport report;
  try {
    report = evaluate(raw.streams, *profile, *keys, *scenario,
                      args.truth.empty() ? nullptr : &truth);
  } catch (const KeyError& e) {
    diag() << "logveil: " << e.what() << '\n';
    return 5;
  }

  if (!args.truth.empty()) {
    std::ofstream sidecar(args.truth);
    if (!sidecar) {
      diag() << "logveil: cannot write " << args.truth << '\n';
      return 3;
    }
    truth.write(sidecar);
  }
  return emit_report(report, args);
}

void add_attack_flags(CLI::App* cmd, AttackArgs& args, bool evaluate_mode) {
  // The sidecar form cannot mark anything required: when the evaluate
  // subcommand runs, the parent's options legitimately stay empty.
  auto* inputs =
      cmd->add_option("inputs", args.inputs, "Log files to attack")->check(CLI::ExistingFile);
  auto* schema =
      cmd->add_option("--schema", args.schemas, "Input schema (one value, or one per input)");
  if (evaluate_mode) {
    inputs->required();
    schema->required();
  }
  if (evaluate_mode) {
    cmd->add_option("--profile", args.profile, "Profile to anonymize under")->required();
    cmd->add_option("--keys", args.key_dir, "Directory for resolving key files");
    cmd->add_option("--truth", args.truth, "Write the run's ground-truth sidecar here");
  } else {
    cmd->add_option("--profile", args.profile,
                    "Profile the inputs were anonymized under (for carrier notes)");
    cmd->add_option("--truth", args.truth, "Ground-truth sidecar to score against");
  }
  cmd->add_option("--output", args.output, "Report destination (default stdout)");
  cmd->add_option("--mode", args.mode, "Report format")
      ->check(CLI::IsMember({"native", "xml"}));
  cmd->add_option("--attack", args.attacks,
                  "Comma-separated attacks: fingerprint,structure,prefix,known-mapping,"
                  "injection (default all)");
  cmd->add_option("--server", args.servers, "Known raw server address, busiest first");
  cmd->add_option("--service-port", args.service_port, "Fingerprinted service port");
  cmd->add_option("--threshold", args.threshold, "Fingerprint traffic-share threshold");
  cmd->add_option("--reveal", args.reveals, "Raw identity granted to the attacker");
  cmd->add_option("--inject-target", args.inject_target,
                  "Raw address the injected probes were aimed at");
  cmd->add_option("--inject-carrier", args.inject_carrier, "Injection carrier")
      ->check(CLI::IsMember({"port", "gap"}));
  cmd->add_option("--inject-kind", args.inject_kind, "Injection sequence")
      ->check(CLI::IsMember({"fibonacci", "prng"}));
  cmd->add_option("--inject-length", args.inject_length, "Injected run length (>= 8)");
  cmd->add_option("--inject-seed", args.inject_seed, "Seed for the prng sequence");
  cmd->add_option("--inject-gap", args.inject_gap, "Base probe gap in seconds");
  cmd->add_option("--inject-jitter", args.inject_jitter, "Relative gap tolerance");
  cmd->add_option("--scan-min", args.scan_min, "Minimum distinct scan destinations");
  cmd->add_option("--scan-window", args.scan_window, "Scan window in seconds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-level log anonymizer with a built-in adversary"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key file plus id sidecar");
  keygen_cmd->add_option("--output,-o", keygen.output, "Key file path")->required();
  keygen_cmd->add_option("--id", keygen.id, "Key id (default: file stem)");
  keygen_cmd->add_flag("--force", keygen.force, "Replace an existing key file");

  AnonymizeArgs anonymize;
  auto* anon_cmd = app.add_subcommand("anonymize", "Apply a profile to log files");
  anon_cmd->add_option("inputs", anonymize.inputs, "Log files to anonymize")
      ->required()
      ->check(CLI::ExistingFile);
  anon_cmd->add_option("--schema", anonymize.schemas,
                       "Input schema: netflow|syslog|clf|iptables (one value, or one per input)")
      ->required();
  anon_cmd->add_option("--profile", anonymize.profile, "Profile file")->required();
  anon_cmd->add_option("--keys", anonymize.key_dir, "Directory for resolving key files");
  anon_cmd->add_option("--output", anonymize.output, "Output file (default stdout)");
  anon_cmd->add_option("--mode", anonymize.mode, "Output format")
      ->check(CLI::IsMember({"native", "xml"}));
  anon_cmd->add_option("--truth", anonymize.truth,
                       "Write a raw<->anonymized ground-truth sidecar (sensitive!)");
  anon_cmd->add_option("--report", anonymize.report,
                       "Write the applied-profile report here instead of stderr");
  anon_cmd->add_flag("--strict", anonymize.strict, "Stop at the first unparseable line");
  anon_cmd->add_option("--jobs", anonymize.jobs, "Worker threads (0 = all cores)");

  ValidateArgs validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check a profile and/or parse log files");
  validate_cmd->add_option("inputs", validate.inputs, "Log files to parse-check")
      ->check(CLI::ExistingFile);
  validate_cmd->add_option("--schema", validate.schemas, "Input schema");
  validate_cmd->add_option("--profile", validate.profile, "Profile file to validate");
  validate_cmd->add_flag("--strict", validate.strict, "Stop at the first unparseable line");

  AttackArgs sidecar;
  auto* attack_cmd =
      app.add_subcommand("attack", "Score attacks against anonymized logs");
  add_attack_flags(attack_cmd, sidecar, false);

  AttackArgs eval;
  auto* eval_cmd = attack_cmd->add_subcommand(
      "evaluate", "Anonymize raw logs under a profile, then attack the result");
  add_attack_flags(eval_cmd, eval, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*keygen_cmd) return run_keygen(keygen);
    if (*attack_cmd) {
      if (*eval_cmd) return run_attack_evaluate(eval);
      return run_attack_sidecar(sidecar);
    }
    if (*anon_cmd) return run_anonymize(anonymize);
    if (*validate_cmd) return run_validate(validate);
  } catch (const std::exception& e) {
    diag() << "logveil: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
