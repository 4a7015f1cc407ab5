// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/crypto.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <algorithm>
#include <memory>

#include "qgk/errors.hpp"
#include "qgk/hash.hpp"

namespace qgk {

namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx new_cipher_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw CryptoError("EVP_CIPHER_CTX_new failed");
  return ctx;
}

constexpr std::string_view kSaltLabel = "QGK/pbkdf2-salt";

}  // namespace

Bytes pbkdf2_hmac_sha256(ByteView password, ByteView salt,
                         std::uint32_t iterations, std::size_t out_len) {
  if (iterations == 0) throw ParameterError("PBKDF2 iterations must be >= 1");
  Bytes out(out_len);
  if (PKCS5_PBKDF2_HMAC(reinterpret_cast<const char*>(password.data()),
                        static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()),
                        static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(out_len), out.data()) != 1) {
    throw CryptoError("PBKDF2 failed");
  }
  return out;
}

std::array<std::uint8_t, 16> password_salt(std::string_view shared_secret,
                                           std::string_view context_string) {
  Bytes buf = to_bytes(kSaltLabel);
  append_length_prefixed(buf, as_bytes(shared_secret));
  append_length_prefixed(buf, as_bytes(context_string));
  Digest d = sha256(buf);
  std::array<std::uint8_t, 16> salt;
  std::copy_n(d.begin(), salt.size(), salt.begin());
  return salt;
}

Digest strengthen_password(std::string_view password,
                           std::string_view shared_secret,
                           std::string_view context_string,
                           std::uint32_t iterations) {
  auto salt = password_salt(shared_secret, context_string);
  Bytes raw = pbkdf2_hmac_sha256(as_bytes(password), salt, iterations, 32);
  Digest key;
  std::copy(raw.begin(), raw.end(), key.begin());
  return key;
}

Digest derive_encryption_key(const Digest& strengthened,
                             const Digest& encrypt_seed) {
  return sha256({strengthened, encrypt_seed});
}

Nonce random_nonce() {
  Nonce n;
  if (RAND_bytes(n.data(), static_cast<int>(n.size())) != 1) {
    throw CryptoError("system entropy source failed");
  }
  return n;
}

ProtectedPayload encrypt_payload_with_nonce(const Digest& key,
                                            ByteView plaintext,
                                            PayloadType type,
                                            const Nonce& nonce) {
  if (plaintext.empty()) throw ParameterError("plaintext must not be empty");

  ProtectedPayload out;
  out.nonce = nonce;
  out.plaintext_len = plaintext.size();
  out.payload_type = type;
  out.ciphertext.resize(plaintext.size());

  auto ctx = new_cipher_ctx();
  int len = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                         nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN,
                          static_cast<int>(kNonceSize), nullptr) != 1 ||
      EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(),
                         nonce.data()) != 1) {
    throw CryptoError("AES-GCM init failed");
  }
  // EVP takes int lengths; feed large payloads in chunks.
  std::size_t done = 0;
  while (done < plaintext.size()) {
    int chunk = static_cast<int>(std::min<std::size_t>(plaintext.size() - done,
                                                       1 << 30));
    if (EVP_EncryptUpdate(ctx.get(), out.ciphertext.data() + done, &len,
                          plaintext.data() + done, chunk) != 1) {
      throw CryptoError("AES-GCM encrypt failed");
    }
    done += static_cast<std::size_t>(len);
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + done, &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG,
                          static_cast<int>(kTagSize), out.tag.data()) != 1) {
    throw CryptoError("AES-GCM finalize failed");
  }
  return out;
}

ProtectedPayload encrypt_payload(const Digest& key, ByteView plaintext,
                                 PayloadType type) {
  return encrypt_payload_with_nonce(key, plaintext, type, random_nonce());
}

std::optional<Bytes> decrypt_payload(const Digest& key,
                                     const ProtectedPayload& payload) {
  if (payload.ciphertext.size() != payload.plaintext_len ||
      payload.ciphertext.empty()) {
    return std::nullopt;
  }
  auto ctx = new_cipher_ctx();
  Bytes plain(payload.ciphertext.size());
  int len = 0;
  Tag tag = payload.tag;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                         nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN,
                          static_cast<int>(kNonceSize), nullptr) != 1 ||
      EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(),
                         payload.nonce.data()) != 1) {
    throw CryptoError("AES-GCM init failed");
  }
  std::size_t done = 0;
  while (done < payload.ciphertext.size()) {
    int chunk = static_cast<int>(
        std::min<std::size_t>(payload.ciphertext.size() - done, 1 << 30));
    if (EVP_DecryptUpdate(ctx.get(), plain.data() + done, &len,
                          payload.ciphertext.data() + done, chunk) != 1) {
      return std::nullopt;
    }
    done += static_cast<std::size_t>(len);
  }
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG,
                          static_cast<int>(kTagSize), tag.data()) != 1) {
    throw CryptoError("AES-GCM set tag failed");
  }
  if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + done, &len) != 1) {
    // Never release unauthenticated plaintext.
    OPENSSL_cleanse(plain.data(), plain.size());
    return std::nullopt;
  }
  return plain;
}

Bytes aes256_ctr(const Digest& key, const Nonce& nonce, ByteView data) {
  std::array<std::uint8_t, 16> counter{};
  std::copy(nonce.begin(), nonce.end(), counter.begin());
  counter[15] = 2;

  auto ctx = new_cipher_ctx();
  Bytes out(data.size());
  int len = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_ctr(), nullptr, key.data(),
                         counter.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data(), &len, data.data(),
                        static_cast<int>(data.size())) != 1) {
    throw CryptoError("AES-CTR failed");
  }
  return out;
}

}  // namespace qgk
