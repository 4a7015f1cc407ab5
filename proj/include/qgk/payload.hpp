// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qgk/bytes.hpp"
#include "qgk/crypto.hpp"
#include "qgk/image.hpp"

namespace qgk {

inline constexpr std::uint32_t kDefaultResizeTarget = 512;

/// A secret to hide: UTF-8 text, opaque bytes, or an image.
struct SecretInput {
  enum class Kind { text, bytes, image };

  Kind kind = Kind::bytes;
  Bytes data;
  Image image;
  std::uint32_t resize_target = kDefaultResizeTarget;
  ResizeFilter filter = ResizeFilter::bilinear;

  /// Throws FormatError if the text is not valid UTF-8.
  static SecretInput from_text(std::string_view text);
  static SecretInput from_bytes(Bytes bytes);
  static SecretInput from_image(Image image,
                                std::uint32_t resize_target = kDefaultResizeTarget);
};

/// Message bytes M and the type flag stored in the header.
struct NormalizedPayload {
  Bytes message;
  PayloadType type = PayloadType::raw_bytes;
};

/// Recovered secret. `image` is set for image payloads.
struct RecoveredSecret {
  PayloadType type = PayloadType::raw_bytes;
  Bytes bytes;
  std::optional<Image> image;

  friend bool operator==(const RecoveredSecret&,
                         const RecoveredSecret&) = default;
};

/// Text/bytes pass through. Images become Base64(PNG(Resize(I, N x N))).
NormalizedPayload normalize(const SecretInput& input);

/// The raster that an image secret is expected to come back as.
Image canonical_secret_image(const SecretInput& input);

/// Inverse of normalize. Throws FormatError on malformed image payloads.
RecoveredSecret restore(Bytes message, PayloadType type);

bool is_valid_utf8(std::string_view text);

/// Standard alphabet, padded, no line breaks.
std::string base64_encode(ByteView data);
/// std::nullopt for non-canonical lengths or invalid characters.
std::optional<Bytes> base64_decode(std::string_view text);

}  // namespace qgk
