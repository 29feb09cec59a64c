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

#include "logveil/profile.hpp"

#include <openssl/sha.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace logveil {

namespace fs = std::filesystem;

LadderKind ladder_of(FieldClass cls) noexcept {
  switch (cls) {
    case FieldClass::Ipv4Src:
    case FieldClass::Ipv4Dst:
    case FieldClass::Ipv4Other:
      return LadderKind::Address;
    case FieldClass::PortSrc:
    case FieldClass::PortDst:
      return LadderKind::PortLadder;
    case FieldClass::Timestamp:
      return LadderKind::Time;
    case FieldClass::Hostname:
    case FieldClass::UserId:
    case FieldClass::FreeText:
    case FieldClass::Opaque:
      return LadderKind::Text;
    case FieldClass::Protocol:
    case FieldClass::Count:
    case FieldClass::StatusCode:
      return LadderKind::Flat;
  }
  return LadderKind::Flat;
}

int max_level(LadderKind kind) noexcept {
  switch (kind) {
    case LadderKind::Address:
      return 4;
    case LadderKind::PortLadder:
      return 3;
    case LadderKind::Time:
      return 4;
    case LadderKind::Text:
      return 2;
    case LadderKind::Flat:
      return 1;
  }
  return 0;
}

bool level_needs_key(LadderKind kind, int level) noexcept {
  switch (kind) {
    case LadderKind::Address:
      return level == 1 || level == 2;  // truncate and black are unkeyed
    case LadderKind::PortLadder:
      return level == 1 || level == 2;
    case LadderKind::Time:
      return level == 2;  // only the shift draws from the PRF
    case LadderKind::Text:
      return level == 1;
    case LadderKind::Flat:
      return false;
  }
  return false;
}

namespace {

struct FieldDirective {
  std::vector<FieldClass> classes;
  int level = 0;
  std::string key_id;
  bool key_given = false;
  std::vector<std::pair<std::string, std::string>> params;
  std::size_t line = 0;
};

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// "ipv4", "port", "text" expand to their member classes.
std::vector<FieldClass> expand_class_token(std::string_view token) {
  if (token == "ipv4") {
    return {FieldClass::Ipv4Src, FieldClass::Ipv4Dst, FieldClass::Ipv4Other};
  }
  if (token == "port") {
    return {FieldClass::PortSrc, FieldClass::PortDst};
  }
  if (token == "text") {
    return {FieldClass::Hostname, FieldClass::UserId, FieldClass::FreeText,
            FieldClass::Opaque};
  }
  if (const auto cls = field_class_from_name(token)) return {*cls};
  return {};
}

int parse_int(const std::string& text, int lo, int hi, std::size_t line,
              const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw ProfileError(std::string("invalid ") + what + ": " + text, line);
  }
  if (used != text.size() || value < lo || value > hi) {
    throw ProfileError(std::string("invalid ") + what + ": " + text, line);
  }
  return value;
}

void apply_param(LevelParams& params, const std::string& name, const std::string& value,
                 std::size_t line) {
  if (name == "bits") {
    params.truncate_bits = parse_int(value, 0, 32, line, "bits param");
  } else if (name == "unit") {
    const auto unit = time_unit_from_name(value);
    if (!unit) throw ProfileError("invalid unit param: " + value, line);
    params.unit = *unit;
  } else if (name == "boundary") {
    params.boundary = static_cast<Port>(parse_int(value, 0, 65535, line, "boundary param"));
  } else if (name == "namespace") {
    if (value == "legacy") {
      params.legacy_namespace = true;
    } else if (value == "class") {
      params.legacy_namespace = false;
    } else {
      throw ProfileError("invalid namespace param: " + value, line);
    }
  } else if (name == "refyear") {
    params.reference_year = parse_int(value, 1970, 9999, line, "refyear param");
  } else {
    throw ProfileError("unknown param: " + name, line);
  }
}

std::string sha256_hex(std::string_view text) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * SHA256_DIGEST_LENGTH);
  for (unsigned char b : digest) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0x0f]);
  }
  return out;
}

}  // namespace

Profile load_profile(std::istream& in, std::string_view origin) {
  Profile profile;
  if (!origin.empty()) {
    profile.origin_dir_ = fs::path(origin).parent_path();
  }

  bool saw_profile = false;
  bool saw_scope = false;
  std::vector<FieldDirective> directives;
  std::vector<std::string> key_order;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0];

    if (directive == "profile") {
      if (saw_profile) throw ProfileError("duplicate profile line", line_no);
      if (tokens.size() != 2) throw ProfileError("profile needs exactly one name", line_no);
      profile.name_ = tokens[1];
      saw_profile = true;
      continue;
    }
    if (!saw_profile) {
      throw ProfileError("first directive must be 'profile <name>'", line_no);
    }

    if (directive == "scope") {
      if (saw_scope) throw ProfileError("duplicate scope line", line_no);
      if (tokens.size() != 2) throw ProfileError("scope needs one value", line_no);
      if (tokens[1] == "per-stream") {
        profile.scope_ = ConsistencyScope::PerStream;
      } else if (tokens[1] == "cross-log") {
        profile.scope_ = ConsistencyScope::CrossLog;
      } else {
        throw ProfileError("invalid scope: " + tokens[1], line_no);
      }
      saw_scope = true;
    } else if (directive == "key") {
      if (tokens.size() != 3) throw ProfileError("key needs '<id> <path>'", line_no);
      if (profile.key_paths_.count(tokens[1]) != 0) {
        throw ProfileError("duplicate key id: " + tokens[1], line_no);
      }
      profile.key_paths_.emplace(tokens[1], fs::path(tokens[2]));
      key_order.push_back(tokens[1]);
    } else if (directive == "field") {
      if (tokens.size() < 4 || tokens[2] != "level") {
        throw ProfileError("field needs '<class> level <n> ...'", line_no);
      }
      FieldDirective d;
      d.line = line_no;
      d.classes = expand_class_token(tokens[1]);
      if (d.classes.empty()) {
        throw ProfileError("unknown field class: " + tokens[1], line_no);
      }
      d.level = parse_int(tokens[3], 0, 16, line_no, "level");
      for (std::size_t i = 4; i < tokens.size(); ++i) {
        const std::string& tok = tokens[i];
        if (tok.rfind("key=", 0) == 0) {
          d.key_id = tok.substr(4);
          d.key_given = true;
          if (d.key_id.empty()) throw ProfileError("empty key reference", line_no);
        } else if (tok.rfind("param=", 0) == 0) {
          const std::string body = tok.substr(6);
          const auto colon = body.find(':');
          if (colon == std::string::npos || colon == 0) {
            throw ProfileError("param needs 'name:value': " + tok, line_no);
          }
          d.params.emplace_back(body.substr(0, colon), body.substr(colon + 1));
        } else {
          throw ProfileError("unknown field option: " + tok, line_no);
        }
      }
      directives.push_back(std::move(d));
    } else {
      throw ProfileError("unknown directive: " + directive, line_no);
    }
  }
  if (!saw_profile) throw ProfileError("missing 'profile <name>' line", 0);

  // Directives apply in file order; a later line overrides an earlier one
  // for the classes it names, so specific classes normally follow groups.
  for (const auto& d : directives) {
    for (FieldClass cls : d.classes) {
      const LadderKind ladder = ladder_of(cls);
      if (d.level > max_level(ladder)) {
        throw ProfileError("level " + std::to_string(d.level) + " out of range for " +
                               std::string(to_string(cls)),
                           d.line);
      }
      Assignment& a = profile.assignments_[static_cast<std::size_t>(cls)];
      a.level = d.level;
      a.params = LevelParams{};
      for (const auto& [name, value] : d.params) {
        apply_param(a.params, name, value, d.line);
      }
      if (d.key_given) {
        if (profile.key_paths_.count(d.key_id) == 0) {
          throw ProfileError("unresolved key: " + d.key_id, d.line);
        }
        a.key_id = d.key_id;
      } else if (level_needs_key(ladder, d.level)) {
        if (key_order.empty()) {
          throw ProfileError("level " + std::to_string(d.level) + " for " +
                                 std::string(to_string(cls)) +
                                 " requires a key, but none is declared",
                             d.line);
        }
        a.key_id = key_order.front();  // first declared key is the default
      } else {
        a.key_id.clear();
      }
    }
  }

  profile.digest_ = sha256_hex(profile.normalized());
  return profile;
}

Profile load_profile_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ProfileError("cannot read profile: " + path.string(), 0);
  return load_profile(in, path.string());
}

std::string Profile::normalized() const {
  std::ostringstream out;
  out << "profile " << name_ << '\n';
  out << "scope " << (scope_ == ConsistencyScope::PerStream ? "per-stream" : "cross-log")
      << '\n';
  for (const auto& [id, path] : key_paths_) {
    out << "key " << id << ' ' << path.string() << '\n';
  }
  for (int i = 0; i < kFieldClassCount; ++i) {
    const auto cls = static_cast<FieldClass>(i);
    const Assignment& a = assignments_[static_cast<std::size_t>(i)];
    out << "field " << to_string(cls) << " level " << a.level;
    if (!a.key_id.empty()) out << " key=" << a.key_id;
    switch (ladder_of(cls)) {
      case LadderKind::Address:
        out << " param=bits:" << a.params.truncate_bits;
        break;
      case LadderKind::PortLadder:
        out << " param=boundary:" << a.params.boundary;
        break;
      case LadderKind::Time:
        out << " param=unit:" << to_string(a.params.unit)
            << " param=refyear:" << a.params.reference_year;
        break;
      case LadderKind::Text:
        out << " param=namespace:" << (a.params.legacy_namespace ? "legacy" : "class");
        break;
      case LadderKind::Flat:
        break;
    }
    out << '\n';
  }
  return out.str();
}

KeyChain load_profile_keys(const Profile& profile,
                           const std::optional<fs::path>& key_dir) {
  KeyChain chain;
  for (const auto& [id, path] : profile.key_paths()) {
    fs::path resolved;
    if (path.is_absolute()) {
      resolved = path;
    } else {
      std::vector<fs::path> candidates;
      if (key_dir) candidates.push_back(*key_dir / path);
      if (const char* env = std::getenv("ANON_KEY_DIR")) {
        candidates.push_back(fs::path(env) / path);
      }
      if (!profile.origin_dir().empty()) {
        candidates.push_back(profile.origin_dir() / path);
      }
      candidates.push_back(path);
      for (const auto& c : candidates) {
        if (fs::exists(c)) {
          resolved = c;
          break;
        }
      }
      if (resolved.empty()) {
        std::string tried;
        for (const auto& c : candidates) {
          if (!tried.empty()) tried += ", ";
          tried += c.string();
        }
        throw KeyError("key file for '" + id + "' not found (tried: " + tried + ")");
      }
    }
    chain.add(load_key(id, resolved));
  }
  return chain;
}

}  // namespace logveil
