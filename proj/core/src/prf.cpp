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

#include "logveil/prf.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace logveil {

std::array<std::uint8_t, 32> KeyedPrf::eval_labeled(
    std::string_view label, std::span<const std::uint8_t> payload) const {
  std::vector<std::uint8_t> msg;
  msg.reserve(label.size() + 1 + payload.size());
  msg.insert(msg.end(), label.begin(), label.end());
  msg.push_back(0x00);
  msg.insert(msg.end(), payload.begin(), payload.end());
  return eval(msg);
}

std::uint64_t KeyedPrf::eval_u64(std::string_view label,
                                 std::span<const std::uint8_t> payload) const {
  const auto out = eval_labeled(label, payload);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | out[static_cast<std::size_t>(i)];
  return v;
}

namespace {

struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_MD_CTX, CtxDeleter>;

CtxPtr new_ctx() {
  CtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  return ctx;
}

// Per-thread scratch context.  eval() fully overwrites it via copy_ex, so
// sharing one across PRF instances on the same thread is sound.
EVP_MD_CTX* scratch_ctx() {
  thread_local CtxPtr ctx = new_ctx();
  return ctx.get();
}

constexpr std::size_t kBlockBytes = 64;  // SHA-256 block size

}  // namespace

// HMAC(K, m) = H((K ^ opad) || H((K ^ ipad) || m)).  inner/outer hold the
// hash state directly after absorbing the xored key block, so each eval
// costs two state clones and the message-dependent compression only.
struct HmacSha256Prf::Impl {
  CtxPtr inner;
  CtxPtr outer;
};

HmacSha256Prf::HmacSha256Prf(const AnonKey& key) : impl_(new Impl) {
  // A 32-byte key is shorter than the block size, so it is used as-is and
  // zero-padded, per the HMAC definition.
  std::uint8_t ipad[kBlockBytes];
  std::uint8_t opad[kBlockBytes];
  std::memset(ipad, 0x36, sizeof ipad);
  std::memset(opad, 0x5c, sizeof opad);
  for (std::size_t i = 0; i < kKeyBytes; ++i) {
    ipad[i] = static_cast<std::uint8_t>(ipad[i] ^ key.bytes()[i]);
    opad[i] = static_cast<std::uint8_t>(opad[i] ^ key.bytes()[i]);
  }

  impl_->inner = new_ctx();
  impl_->outer = new_ctx();
  if (EVP_DigestInit_ex(impl_->inner.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(impl_->inner.get(), ipad, sizeof ipad) != 1 ||
      EVP_DigestInit_ex(impl_->outer.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(impl_->outer.get(), opad, sizeof opad) != 1) {
    throw std::runtime_error("HMAC pad precomputation failed");
  }

  OPENSSL_cleanse(ipad, sizeof ipad);
  OPENSSL_cleanse(opad, sizeof opad);
}

HmacSha256Prf::~HmacSha256Prf() = default;

std::array<std::uint8_t, 32> HmacSha256Prf::eval(
    std::span<const std::uint8_t> message) const {
  EVP_MD_CTX* ctx = scratch_ctx();
  std::array<std::uint8_t, 32> digest{};
  unsigned len = 0;

  if (EVP_MD_CTX_copy_ex(ctx, impl_->inner.get()) != 1 ||
      EVP_DigestUpdate(ctx, message.data(), message.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1) {
    throw std::runtime_error("HMAC inner hash failed");
  }
  if (EVP_MD_CTX_copy_ex(ctx, impl_->outer.get()) != 1 ||
      EVP_DigestUpdate(ctx, digest.data(), digest.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1) {
    throw std::runtime_error("HMAC outer hash failed");
  }
  return digest;
}

std::unique_ptr<KeyedPrf> make_prf(const AnonKey& key) {
  return std::make_unique<HmacSha256Prf>(key);
}

AnonKey derive_stream_key(const AnonKey& key, std::string_view stream_id) {
  HmacSha256Prf prf(key);
  const auto out = prf.eval_labeled(
      "stream-key",
      std::span(reinterpret_cast<const std::uint8_t*>(stream_id.data()),
                stream_id.size()));
  return AnonKey::from_bytes(key.id() + "/" + std::string(stream_id), out);
}

}  // namespace logveil
