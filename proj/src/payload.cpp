// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/payload.hpp"

#include <openssl/evp.h>

#include "qgk/errors.hpp"

namespace qgk {

SecretInput SecretInput::from_text(std::string_view text) {
  if (!is_valid_utf8(text)) throw FormatError("secret text is not valid UTF-8");
  SecretInput in;
  in.kind = Kind::text;
  in.data = to_bytes(text);
  return in;
}

SecretInput SecretInput::from_bytes(Bytes bytes) {
  SecretInput in;
  in.kind = Kind::bytes;
  in.data = std::move(bytes);
  return in;
}

SecretInput SecretInput::from_image(Image image, std::uint32_t resize_target) {
  image.validate();
  SecretInput in;
  in.kind = Kind::image;
  in.image = std::move(image);
  in.resize_target = resize_target;
  return in;
}

Image canonical_secret_image(const SecretInput& input) {
  if (input.kind != SecretInput::Kind::image) {
    throw ParameterError("secret is not an image");
  }
  if (input.resize_target == 0) throw ParameterError("resize target is zero");
  // Secrets are always carried as RGB8.
  return resize(to_rgb(input.image), input.resize_target, input.resize_target,
                input.filter);
}

NormalizedPayload normalize(const SecretInput& input) {
  switch (input.kind) {
    case SecretInput::Kind::text:
    case SecretInput::Kind::bytes:
      return {input.data, PayloadType::raw_bytes};
    case SecretInput::Kind::image: {
      std::string b64 = base64_encode(encode_png(canonical_secret_image(input)));
      return {to_bytes(b64), PayloadType::image_png_b64};
    }
  }
  throw ParameterError("unknown secret kind");
}

RecoveredSecret restore(Bytes message, PayloadType type) {
  RecoveredSecret out;
  out.type = type;
  if (type == PayloadType::raw_bytes) {
    out.bytes = std::move(message);
    return out;
  }
  auto png = base64_decode(to_string(message));
  if (!png) throw FormatError("payload is not valid base64");
  out.image = decode_png(*png);
  out.bytes = std::move(*png);
  return out;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > text.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates, and values past U+10FFFF.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string base64_encode(ByteView data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                          data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::optional<Bytes> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) return std::nullopt;
  if (text.empty()) return Bytes{};
  // EVP_DecodeBlock tolerates surrounding whitespace; the wire form has none.
  for (char c : text) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
              (c >= '0' && c <= '9') || c == '+' || c == '/' || c == '=';
    if (!ok) return std::nullopt;
  }
  std::size_t pad = 0;
  if (text.back() == '=') ++pad;
  if (text.size() >= 2 && text[text.size() - 2] == '=') ++pad;
  if (text.substr(0, text.size() - pad).find('=') != std::string_view::npos) {
    return std::nullopt;
  }

  Bytes out(text.size() / 4 * 3);
  int n = EVP_DecodeBlock(out.data(),
                          reinterpret_cast<const unsigned char*>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) return std::nullopt;
  // EVP_DecodeBlock counts padding positions as zero bytes.
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

}  // namespace qgk
