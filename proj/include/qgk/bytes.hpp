// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgk {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// 32-byte hash output. Used for seeds, signatures and 256-bit keys.
using Digest = std::array<std::uint8_t, 32>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
  auto v = as_bytes(s);
  return {v.begin(), v.end()};
}

inline std::string to_string(ByteView b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

void append(Bytes& out, ByteView data);
void append_be32(Bytes& out, std::uint32_t value);
void append_be64(Bytes& out, std::uint64_t value);

/// Appends BE32(len) followed by the bytes, so concatenations of several
/// fields stay unambiguous.
void append_length_prefixed(Bytes& out, ByteView data);

std::uint32_t load_be32(ByteView in);
std::uint64_t load_be64(ByteView in);

std::string to_hex(ByteView data);

/// Lowercase or uppercase hex, exactly 64 characters. Throws FormatError.
Digest digest_from_hex(std::string_view hex);

/// Arbitrary-length hex. Throws FormatError on odd length or bad digits.
Bytes bytes_from_hex(std::string_view hex);

}  // namespace qgk
