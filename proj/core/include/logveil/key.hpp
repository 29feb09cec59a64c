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
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace logveil {

inline constexpr std::size_t kKeyBytes = 32;

struct KeyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a key file already exists and overwrite was not forced.
struct KeyExistsError : KeyError {
  using KeyError::KeyError;
};

// 256-bit anonymization key plus its human-readable id.
class AnonKey {
 public:
  AnonKey(std::string id, std::array<std::uint8_t, kKeyBytes> bytes)
      : id_(std::move(id)), bytes_(bytes) {}

  static AnonKey generate(std::string id);  // CSPRNG-filled
  static AnonKey from_bytes(std::string id, std::span<const std::uint8_t> bytes);

  const std::string& id() const noexcept { return id_; }
  const std::array<std::uint8_t, kKeyBytes>& bytes() const noexcept { return bytes_; }

  // Hex SHA-256 of the key bytes; what the sidecar records.  Safe to log.
  std::string digest_hex() const;

 private:
  std::string id_;
  std::array<std::uint8_t, kKeyBytes> bytes_;
};

// Writes the raw 32 key bytes to `path` (mode 0600) and a one-line sidecar
// "<key-id>\t<hex-digest>" to `path`.id.  Throws KeyExistsError when the key
// file exists and force is false.
void save_key(const AnonKey& key, const std::filesystem::path& path, bool force = false);

// Loads a key file written by save_key.  Requires exactly 32 bytes; when the
// sidecar is present its id and digest must match.
AnonKey load_key(std::string id, const std::filesystem::path& path);

// Key-id -> key, as resolved for one profile run.
class KeyChain {
 public:
  void add(AnonKey key);
  const AnonKey* find(std::string_view id) const noexcept;
  bool empty() const noexcept { return keys_.empty(); }

 private:
  std::map<std::string, AnonKey, std::less<>> keys_;
};

}  // namespace logveil
