// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/hash.hpp"

#include <openssl/evp.h>

#include "qgk/errors.hpp"

namespace qgk {

struct Sha256::Impl {
  EVP_MD_CTX* ctx = nullptr;
  bool started = false;

  Impl() : ctx(EVP_MD_CTX_new()) {
    if (ctx == nullptr) throw CryptoError("EVP_MD_CTX_new failed");
  }
  ~Impl() { EVP_MD_CTX_free(ctx); }

  void ensure_started() {
    if (started) return;
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
      throw CryptoError("SHA-256 init failed");
    }
    started = true;
  }
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {}
Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::update(ByteView data) {
  impl_->ensure_started();
  if (!data.empty() &&
      EVP_DigestUpdate(impl_->ctx, data.data(), data.size()) != 1) {
    throw CryptoError("SHA-256 update failed");
  }
  return *this;
}

Digest Sha256::finish() {
  impl_->ensure_started();
  Digest out;
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(impl_->ctx, out.data(), &len) != 1 || len != 32) {
    throw CryptoError("SHA-256 final failed");
  }
  impl_->started = false;
  return out;
}

Digest sha256(ByteView data) { return Sha256().update(data).finish(); }

Digest sha256(std::initializer_list<ByteView> parts) {
  Sha256 h;
  for (auto p : parts) h.update(p);
  return h.finish();
}

}  // namespace qgk
