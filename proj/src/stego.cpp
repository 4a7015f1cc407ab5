// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/stego.hpp"

#include <zlib.h>

#include <algorithm>
#include <numeric>

#include "qgk/errors.hpp"
#include "qgk/hash.hpp"
#include "qgk/keystream.hpp"

namespace qgk {

Bits bytes_to_bits(ByteView bytes) {
  Bits bits;
  bits.reserve(bytes.size() * 8);
  for (auto b : bytes) {
    for (int shift = 7; shift >= 0; --shift) bits.push_back((b >> shift) & 1);
  }
  return bits;
}

Bytes bits_to_bytes(std::span<const std::uint8_t> bits) {
  if (bits.size() % 8 != 0) {
    throw ParameterError("bit count must be a multiple of 8");
  }
  Bytes out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out[i / 8] = static_cast<std::uint8_t>((out[i / 8] << 1) | (bits[i] & 1));
  }
  return out;
}

namespace {

std::uint32_t crc32_of(ByteView data) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, data.data(), static_cast<uInt>(data.size())));
}

}  // namespace

std::array<std::uint8_t, kHeaderBytes> HeaderContainer::serialize() const {
  Bytes buf;
  buf.reserve(kHeaderBytes);
  append(buf, kMagic);
  buf.push_back(kVersion);
  buf.push_back(static_cast<std::uint8_t>(payload_type));
  append(buf, nonce);
  append_be64(buf, ciphertext_len);
  buf.push_back(0);
  buf.push_back(0);
  append_be32(buf, crc32_of(buf));

  std::array<std::uint8_t, kHeaderBytes> out;
  std::copy(buf.begin(), buf.end(), out.begin());
  return out;
}

std::optional<HeaderContainer> HeaderContainer::parse(ByteView bytes) {
  if (bytes.size() != kHeaderBytes) return std::nullopt;
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    return std::nullopt;
  }
  if (bytes[4] != kVersion) return std::nullopt;
  if (bytes[5] > static_cast<std::uint8_t>(PayloadType::image_png_b64)) {
    return std::nullopt;
  }
  if (bytes[26] != 0 || bytes[27] != 0) return std::nullopt;
  if (load_be32(bytes.subspan(28, 4)) != crc32_of(bytes.first(28))) {
    return std::nullopt;
  }
  HeaderContainer h;
  h.payload_type = static_cast<PayloadType>(bytes[5]);
  std::copy_n(bytes.begin() + 6, kNonceSize, h.nonce.begin());
  h.ciphertext_len = load_be64(bytes.subspan(18, 8));
  return h;
}

void check_layout_floor(std::uint32_t width, std::uint32_t height) {
  std::uint64_t channels = std::uint64_t{width} * height * 3;
  if (width == 0 || height == 0 ||
      channels < kHeaderBits + 8 * kMinContainerBytes) {
    throw CapacityError("image too small: " + std::to_string(channels) +
                        " channels, need at least " +
                        std::to_string(kHeaderBits + 8 * kMinContainerBytes));
  }
  if (channels > 0xffffffffull) throw CapacityError("image too large");
}

Permutation header_region(std::uint32_t width, std::uint32_t height) {
  check_layout_floor(width, height);
  Permutation r(kHeaderBits);
  std::iota(r.begin(), r.end(), 0u);
  return r;
}

Permutation payload_region(std::uint32_t width, std::uint32_t height) {
  check_layout_floor(width, height);
  std::size_t total = std::size_t{width} * height * 3;
  Permutation r(total - kHeaderBits);
  std::iota(r.begin(), r.end(), static_cast<std::uint32_t>(kHeaderBits));
  return r;
}

Digest payload_traversal_seed(const Digest& payload_seed,
                              const Digest& gate_key) {
  return sha256({payload_seed, gate_key});
}

Permutation header_permutation(std::uint32_t width, std::uint32_t height,
                               const Digest& header_seed) {
  return keyed_permutation(header_region(width, height), header_seed);
}

Permutation payload_permutation(std::uint32_t width, std::uint32_t height,
                                const Digest& traversal_seed) {
  return keyed_permutation(payload_region(width, height), traversal_seed);
}

StegoLayout build_layout(std::uint32_t width, std::uint32_t height,
                         const Digest& header_seed, const Digest& payload_seed,
                         const Digest& gate_key) {
  StegoLayout layout;
  layout.width = width;
  layout.height = height;
  layout.header_perm = header_permutation(width, height, header_seed);
  layout.payload_perm = payload_permutation(
      width, height, payload_traversal_seed(payload_seed, gate_key));
  return layout;
}

void embed_bits_in_place(Image& raster, std::span<const std::uint8_t> bits,
                         std::span<const std::uint32_t> perm) {
  if (bits.size() > perm.size()) {
    throw CapacityError("bit sequence longer than embedding region");
  }
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (perm[i] >= raster.rgb_size()) {
      throw ParameterError("traversal index outside the raster");
    }
    auto& v = raster.rgb(perm[i]);
    v = lsb_substitute(v, bits[i] & 1);
  }
}

Image embed_bits(Image raster, std::span<const std::uint8_t> bits,
                 std::span<const std::uint32_t> perm) {
  embed_bits_in_place(raster, bits, perm);
  return raster;
}

Bits extract_bits(const Image& raster, std::size_t count,
                  std::span<const std::uint32_t> perm) {
  if (count > perm.size()) {
    throw ParameterError("requested more bits than traversal positions");
  }
  Bits out(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (perm[i] >= raster.rgb_size()) {
      throw ParameterError("traversal index outside the raster");
    }
    out[i] = raster.rgb(perm[i]) & 1;
  }
  return out;
}

std::uint64_t capacity(std::uint32_t width, std::uint32_t height) {
  std::uint64_t channels = std::uint64_t{width} * height * 3;
  std::uint64_t reserved = 2 * kHeaderBits;
  if (channels <= reserved) return 0;
  std::uint64_t bytes = (channels - reserved) / 8;
  return bytes > kCapacityMarginBytes ? bytes - kCapacityMarginBytes : 0;
}

}  // namespace qgk
