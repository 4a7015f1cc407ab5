// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qgk/bytes.hpp"
#include "qgk/crypto.hpp"
#include "qgk/image.hpp"

namespace qgk {

/// Header region: the first 256 flattened RGB channel indices.
inline constexpr std::size_t kHeaderBits = 256;
inline constexpr std::size_t kHeaderBytes = kHeaderBits / 8;
/// Fixed margin subtracted by the capacity budget.
inline constexpr std::uint64_t kCapacityMarginBytes = 200;
/// Smallest payload container: one ciphertext byte plus the tag.
inline constexpr std::size_t kMinContainerBytes = 1 + kTagSize;

/// One bit per element, values 0 or 1.
using Bits = std::vector<std::uint8_t>;
using Permutation = std::vector<std::uint32_t>;

/// MSB-first serialization of bytes into bits.
Bits bytes_to_bits(ByteView bytes);
/// Inverse of bytes_to_bits; the bit count must be a multiple of 8.
Bytes bits_to_bytes(std::span<const std::uint8_t> bits);

/// 32-byte header stored in the header region.
///
///   offset size field
///   0      4    magic "QGK1"
///   4      1    version 0x01
///   5      1    payload type
///   6      12   nonce
///   18     8    ciphertext length, big-endian
///   26     2    reserved, zero
///   28     4    CRC-32 of bytes 0..27, big-endian
struct HeaderContainer {
  static constexpr std::array<std::uint8_t, 4> kMagic = {'Q', 'G', 'K', '1'};
  static constexpr std::uint8_t kVersion = 0x01;

  PayloadType payload_type = PayloadType::raw_bytes;
  Nonce nonce{};
  std::uint64_t ciphertext_len = 0;

  std::array<std::uint8_t, kHeaderBytes> serialize() const;

  /// std::nullopt on bad magic, version, reserved bytes, type or CRC.
  static std::optional<HeaderContainer> parse(ByteView bytes);

  friend bool operator==(const HeaderContainer&,
                         const HeaderContainer&) = default;
};

/// Disjoint header/payload regions and their keyed traversals.
struct StegoLayout {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  Permutation header_perm;   // over indices [0, 256)
  Permutation payload_perm;  // over indices [256, 3WH)

  std::size_t channel_count() const {
    return static_cast<std::size_t>(width) * height * 3;
  }
};

Permutation header_region(std::uint32_t width, std::uint32_t height);
Permutation payload_region(std::uint32_t width, std::uint32_t height);

/// SHA-256(sigma_p || K_Q), the seed of the payload traversal.
Digest payload_traversal_seed(const Digest& payload_seed,
                              const Digest& gate_key);

/// Throws CapacityError if 3WH < 256 + 8 * kMinContainerBytes.
void check_layout_floor(std::uint32_t width, std::uint32_t height);

Permutation header_permutation(std::uint32_t width, std::uint32_t height,
                               const Digest& header_seed);

Permutation payload_permutation(std::uint32_t width, std::uint32_t height,
                                const Digest& traversal_seed);

StegoLayout build_layout(std::uint32_t width, std::uint32_t height,
                         const Digest& header_seed, const Digest& payload_seed,
                         const Digest& gate_key);

/// v - (v mod 2) + bit.
constexpr std::uint8_t lsb_substitute(std::uint8_t value, std::uint8_t bit) {
  return static_cast<std::uint8_t>(value - (value % 2) + bit);
}

/// Writes bits[i] into the LSB of RGB channel perm[i]. Throws CapacityError
/// when there are more bits than traversal positions.
Image embed_bits(Image raster, std::span<const std::uint8_t> bits,
                 std::span<const std::uint32_t> perm);

/// In-place variant of embed_bits.
void embed_bits_in_place(Image& raster, std::span<const std::uint8_t> bits,
                         std::span<const std::uint32_t> perm);

/// bits[i] = LSB of RGB channel perm[i], for i < count.
Bits extract_bits(const Image& raster, std::size_t count,
                  std::span<const std::uint32_t> perm);

/// Usable byte budget: floor((3HW - 2 * 256) / 8) - 200, clamped at zero.
/// The payload container (ciphertext || tag) may not exceed it.
std::uint64_t capacity(std::uint32_t width, std::uint32_t height);

}  // namespace qgk
