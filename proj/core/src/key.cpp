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

#include "logveil/key.hpp"

#include <openssl/rand.h>
#include <openssl/sha.h>

#include <fstream>
#include <sstream>

namespace logveil {

namespace fs = std::filesystem;

namespace {

std::string hex_encode(std::span<const std::uint8_t> bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0x0f]);
  }
  return out;
}

fs::path sidecar_path(const fs::path& key_path) {
  fs::path p = key_path;
  p += ".id";
  return p;
}

}  // namespace

AnonKey AnonKey::generate(std::string id) {
  std::array<std::uint8_t, kKeyBytes> bytes{};
  if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1) {
    throw KeyError("key generation: system CSPRNG failure");
  }
  return AnonKey(std::move(id), bytes);
}

AnonKey AnonKey::from_bytes(std::string id, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kKeyBytes) {
    throw KeyError("key must be exactly 32 bytes");
  }
  std::array<std::uint8_t, kKeyBytes> arr{};
  std::copy(bytes.begin(), bytes.end(), arr.begin());
  return AnonKey(std::move(id), arr);
}

std::string AnonKey::digest_hex() const {
  std::array<std::uint8_t, SHA256_DIGEST_LENGTH> digest{};
  SHA256(bytes_.data(), bytes_.size(), digest.data());
  return hex_encode(digest);
}

void save_key(const AnonKey& key, const fs::path& path, bool force) {
  if (!force && fs::exists(path)) {
    throw KeyExistsError("key file exists: " + path.string());
  }
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw KeyError("cannot write key file: " + path.string());
    out.write(reinterpret_cast<const char*>(key.bytes().data()),
              static_cast<std::streamsize>(key.bytes().size()));
    if (!out) throw KeyError("short write on key file: " + path.string());
  }
  fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write,
                  fs::perm_options::replace);
  std::ofstream side(sidecar_path(path), std::ios::trunc);
  if (!side) throw KeyError("cannot write key sidecar: " + sidecar_path(path).string());
  side << key.id() << '\t' << key.digest_hex() << '\n';
}

AnonKey load_key(std::string id, const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw KeyError("cannot read key file: " + path.string());
  std::array<std::uint8_t, kKeyBytes + 1> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != kKeyBytes) {
    throw KeyError("key file " + path.string() + " is not exactly 32 bytes");
  }
  AnonKey key = AnonKey::from_bytes(std::move(id), std::span(buf.data(), kKeyBytes));

  const fs::path side = sidecar_path(path);
  if (fs::exists(side)) {
    std::ifstream sin(side);
    std::string line;
    std::getline(sin, line);
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw KeyError("malformed key sidecar: " + side.string());
    }
    const std::string side_id = line.substr(0, tab);
    const std::string side_digest = line.substr(tab + 1);
    if (side_id != key.id()) {
      throw KeyError("key sidecar id '" + side_id + "' does not match requested id '" +
                     key.id() + "'");
    }
    if (side_digest != key.digest_hex()) {
      throw KeyError("key digest mismatch for " + path.string() +
                     " (wrong or corrupted key material)");
    }
  }
  return key;
}

void KeyChain::add(AnonKey key) {
  const std::string id = key.id();
  keys_.erase(id);
  keys_.emplace(id, std::move(key));
}

const AnonKey* KeyChain::find(std::string_view id) const noexcept {
  const auto it = keys_.find(id);
  return it == keys_.end() ? nullptr : &it->second;
}

}  // namespace logveil
