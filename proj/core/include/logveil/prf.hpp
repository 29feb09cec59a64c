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
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "logveil/key.hpp"

namespace logveil {

// Keyed pseudorandom function seam.  Every keyed primitive is built on this
// interface alone, so the underlying function can be swapped without
// touching the primitives.  Implementations must be usable concurrently
// from multiple threads.
class KeyedPrf {
 public:
  virtual ~KeyedPrf() = default;

  virtual std::array<std::uint8_t, 32> eval(std::span<const std::uint8_t> message) const = 0;

  // eval over "label || 0x00 || payload".  Labels keep unrelated uses of one
  // key from ever sharing an input.
  std::array<std::uint8_t, 32> eval_labeled(std::string_view label,
                                            std::span<const std::uint8_t> payload) const;

  // First 8 output bytes of eval_labeled as a big-endian integer.
  std::uint64_t eval_u64(std::string_view label,
                         std::span<const std::uint8_t> payload) const;
};

// HMAC-SHA256 instantiation.  The inner/outer pad states are precomputed at
// construction; eval clones them per call, which both keeps eval const and
// avoids rehashing the key block.
class HmacSha256Prf final : public KeyedPrf {
 public:
  explicit HmacSha256Prf(const AnonKey& key);
  ~HmacSha256Prf() override;

  HmacSha256Prf(const HmacSha256Prf&) = delete;
  HmacSha256Prf& operator=(const HmacSha256Prf&) = delete;

  std::array<std::uint8_t, 32> eval(std::span<const std::uint8_t> message) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Default PRF construction used by the policy engine and the CLI.
std::unique_ptr<KeyedPrf> make_prf(const AnonKey& key);

// Deterministic per-stream subkey: PRF_k("stream-key" || 0x00 || stream_id).
// Used when a profile scopes consistency to single streams.
AnonKey derive_stream_key(const AnonKey& key, std::string_view stream_id);

}  // namespace logveil
