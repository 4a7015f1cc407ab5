// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qgk/bytes.hpp"

namespace qgk {

enum class PayloadType : std::uint8_t {
  raw_bytes = 0,
  image_png_b64 = 1,
};

inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;
inline constexpr std::uint32_t kDefaultPbkdf2Iterations = 100'000;

using Nonce = std::array<std::uint8_t, kNonceSize>;
using Tag = std::array<std::uint8_t, kTagSize>;

/// The packed protected payload (N, C, T, |M|) plus the payload-type flag.
struct ProtectedPayload {
  Nonce nonce{};
  Bytes ciphertext;
  Tag tag{};
  std::uint64_t plaintext_len = 0;
  PayloadType payload_type = PayloadType::raw_bytes;

  friend bool operator==(const ProtectedPayload&,
                         const ProtectedPayload&) = default;
};

/// PBKDF2-HMAC-SHA256 with arbitrary output length.
Bytes pbkdf2_hmac_sha256(ByteView password, ByteView salt,
                         std::uint32_t iterations, std::size_t out_len);

/// First 16 bytes of SHA-256("QGK/pbkdf2-salt" || lp(S) || lp(C)).
std::array<std::uint8_t, 16> password_salt(std::string_view shared_secret,
                                           std::string_view context_string);

/// K_P: PBKDF2-HMAC-SHA256 of the password under the S/C-bound salt.
Digest strengthen_password(std::string_view password,
                           std::string_view shared_secret,
                           std::string_view context_string,
                           std::uint32_t iterations = kDefaultPbkdf2Iterations);

/// K_E = SHA-256(K_P || sigma_e).
Digest derive_encryption_key(const Digest& strengthened,
                             const Digest& encrypt_seed);

/// AES-256-GCM with a fresh random 96-bit nonce and empty associated data.
ProtectedPayload encrypt_payload(const Digest& key, ByteView plaintext,
                                 PayloadType type);

/// Same as encrypt_payload but with a caller-chosen nonce. Reusing a nonce
/// under one key breaks GCM; this exists for known-answer tests.
ProtectedPayload encrypt_payload_with_nonce(const Digest& key,
                                            ByteView plaintext,
                                            PayloadType type,
                                            const Nonce& nonce);

/// Plaintext on tag verification success, std::nullopt otherwise.
std::optional<Bytes> decrypt_payload(const Digest& key,
                                     const ProtectedPayload& payload);

/// 12 bytes from the system CSPRNG. Throws CryptoError on failure.
Nonce random_nonce();

/// Unauthenticated AES-256-CTR keyed like the GCM path (counter block is
/// nonce || BE32(2), matching GCM's first payload block). Only used by the
/// ablation harness to show what authentication buys.
Bytes aes256_ctr(const Digest& key, const Nonce& nonce, ByteView data);

}  // namespace qgk
