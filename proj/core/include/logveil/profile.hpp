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

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logveil/field.hpp"
#include "logveil/key.hpp"
#include "logveil/primitives.hpp"

namespace logveil {

// Per-class ladder shape.  Levels run weakest (0, pass-through) to
// strongest; what each rung means is fixed per ladder:
//
//   address:  0 none | 1 prefix-preserving | 2 full permutation
//             | 3 truncate | 4 black
//   port:     0 none | 1 bilateral | 2 full permutation | 3 black
//   time:     0 none | 1 reduce precision | 2 shift | 3 enumerate | 4 black
//   text:     0 none | 1 keyed pseudonym | 2 black
//   flat:     0 none | 1 black            (count, status-code, protocol)
enum class LadderKind : std::uint8_t { Address, PortLadder, Time, Text, Flat };

LadderKind ladder_of(FieldClass cls) noexcept;
int max_level(LadderKind kind) noexcept;

// True when the level consumes key material (and so needs a `key` line).
bool level_needs_key(LadderKind kind, int level) noexcept;

struct LevelParams {
  int truncate_bits = 16;            // address level 3
  TimeUnit unit = TimeUnit::Hour;    // time level 1
  Port boundary = 1024;              // port level 1
  bool legacy_namespace = false;     // text level 1: one shared token space
  int reference_year = 2000;         // timestamp parsing for year-less formats
};

struct Assignment {
  int level = 0;
  std::string key_id;  // empty when the level is unkeyed
  LevelParams params;
};

enum class ConsistencyScope : std::uint8_t { CrossLog, PerStream };

struct ProfileError : std::runtime_error {
  ProfileError(std::string message, std::size_t line_arg)
      : std::runtime_error(std::move(message)), line(line_arg) {}
  std::size_t line;  // 1-based; 0 when not tied to a line
};

// A parsed, validated anonymization policy.
class Profile {
 public:
  const std::string& name() const noexcept { return name_; }
  ConsistencyScope scope() const noexcept { return scope_; }
  const Assignment& assignment(FieldClass cls) const {
    return assignments_[static_cast<std::size_t>(cls)];
  }
  const std::map<std::string, std::filesystem::path>& key_paths() const noexcept {
    return key_paths_;
  }
  // Directory of the file the profile came from; "" for stream input.
  // Relative key paths resolve against it as a last resort.
  const std::filesystem::path& origin_dir() const noexcept { return origin_dir_; }

  // Hex SHA-256 over the normalized form: identifies the policy in reports
  // regardless of comments or spacing in the source file.
  const std::string& digest() const noexcept { return digest_; }

  // Canonical one-line-per-setting echo of the profile.
  std::string normalized() const;

  friend Profile load_profile(std::istream& in, std::string_view origin);

 private:
  std::string name_;
  ConsistencyScope scope_ = ConsistencyScope::CrossLog;
  std::map<std::string, std::filesystem::path> key_paths_;
  std::array<Assignment, kFieldClassCount> assignments_{};
  std::filesystem::path origin_dir_;
  std::string digest_;
};

// Parses and validates a profile document.  Throws ProfileError with the
// offending 1-based line number on any malformed directive, unknown class
// or level, or a keyed level with no resolvable key id.
Profile load_profile(std::istream& in, std::string_view origin = "");
Profile load_profile_file(const std::filesystem::path& path);

// Loads every key file the profile references.  Relative paths resolve
// against, in order: `key_dir` when given, $ANON_KEY_DIR when set, then the
// profile's own directory.  Throws KeyError when a file is missing or fails
// its digest check.
KeyChain load_profile_keys(const Profile& profile,
                           const std::optional<std::filesystem::path>& key_dir);

}  // namespace logveil
