// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "qgk/errors.hpp"
#include "qgk/hash.hpp"
#include "qgk/stego.hpp"
#include "test_util.hpp"

namespace qgk {
namespace {

TEST(Lsb, SubstitutionExamples) {
  EXPECT_EQ(lsb_substitute(200, 1), 201);
  EXPECT_EQ(lsb_substitute(201, 0), 200);
  EXPECT_EQ(lsb_substitute(255, 1), 255);
  EXPECT_EQ(lsb_substitute(0, 0), 0);
  for (int v = 0; v < 256; ++v) {
    for (std::uint8_t b : {0, 1}) {
      auto out = lsb_substitute(static_cast<std::uint8_t>(v), b);
      EXPECT_EQ(out & 1, b);
      EXPECT_LE(std::abs(out - v), 1);
    }
  }
}

TEST(Bits, MsbFirstRoundTrip) {
  Bits bits = bytes_to_bits(Bytes{0x80, 0x01});
  EXPECT_EQ(bits, (Bits{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
  std::mt19937_64 rng(2);
  Bytes raw = test::random_bytes(rng, 333);
  EXPECT_EQ(bits_to_bytes(bytes_to_bits(raw)), raw);
  EXPECT_THROW(bits_to_bytes(Bits(7, 0)), ParameterError);
}

HeaderContainer sample_header() {
  HeaderContainer h;
  h.payload_type = PayloadType::image_png_b64;
  for (std::size_t i = 0; i < h.nonce.size(); ++i) h.nonce[i] = static_cast<std::uint8_t>(i + 1);
  h.ciphertext_len = 0x0102030405ull;
  return h;
}

TEST(HeaderContainer, SerializedLayout) {
  auto bytes = sample_header().serialize();
  EXPECT_EQ(to_hex(ByteView(bytes).first(6)), "51474b310101");
  EXPECT_EQ(to_hex(ByteView(bytes).subspan(6, 12)), "0102030405060708090a0b0c");
  EXPECT_EQ(to_hex(ByteView(bytes).subspan(18, 8)), "0000000102030405");
  EXPECT_EQ(bytes[26], 0);
  EXPECT_EQ(bytes[27], 0);
  // CRC-32 (IEEE) of the first 28 bytes, computed independently.
  std::uint32_t crc = 0xffffffffu;
  for (std::size_t i = 0; i < 28; ++i) {
    crc ^= bytes[i];
    for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1u)));
  }
  crc ^= 0xffffffffu;
  EXPECT_EQ(load_be32(ByteView(bytes).subspan(28)), crc);
}

TEST(HeaderContainer, ParseRoundTrip) {
  auto h = sample_header();
  auto bytes = h.serialize();
  auto parsed = HeaderContainer::parse(bytes);
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(*parsed, h);
}

TEST(HeaderContainer, RejectsEveryCorruption) {
  const auto good = sample_header().serialize();
  EXPECT_FALSE(HeaderContainer::parse(ByteView(good).first(31)).has_value());
  for (std::size_t i = 0; i < good.size(); ++i) {
    for (int bit = 0; bit < 8; ++bit) {
      auto bad = good;
      bad[i] ^= static_cast<std::uint8_t>(1u << bit);
      EXPECT_FALSE(HeaderContainer::parse(bad).has_value()) << i << ":" << bit;
    }
  }
}

TEST(HeaderContainer, RejectsWrongMagicEvenWithValidCrc) {
  auto h = sample_header().serialize();
  h[0] = 'X';
  std::uint32_t crc = 0xffffffffu;
  for (std::size_t i = 0; i < 28; ++i) {
    crc ^= h[i];
    for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1u)));
  }
  crc ^= 0xffffffffu;
  for (int i = 0; i < 4; ++i) h[28 + i] = static_cast<std::uint8_t>(crc >> (24 - 8 * i));
  EXPECT_FALSE(HeaderContainer::parse(h).has_value());
}

TEST(Layout, RegionsAreDisjointAndExhaustive) {
  for (auto [w, h] : {std::pair{16u, 16u}, std::pair{37u, 11u}, std::pair{200u, 3u}}) {
    auto head = header_region(w, h);
    auto body = payload_region(w, h);
    EXPECT_EQ(head.size(), kHeaderBits);
    EXPECT_EQ(head.size() + body.size(), std::size_t{3} * w * h);
    std::vector<std::uint32_t> all = head;
    all.insert(all.end(), body.begin(), body.end());
    std::sort(all.begin(), all.end());
    std::vector<std::uint32_t> expected(all.size());
    std::iota(expected.begin(), expected.end(), 0u);
    EXPECT_EQ(all, expected);
    EXPECT_EQ(*std::max_element(head.begin(), head.end()), 255u);
    EXPECT_EQ(*std::min_element(body.begin(), body.end()), 256u);
  }
}

TEST(Layout, PermutationsStayInsideTheirRegions) {
  std::mt19937_64 rng(6);
  auto layout = build_layout(40, 30, test::random_digest(rng),
                             test::random_digest(rng), test::random_digest(rng));
  auto head = layout.header_perm;
  auto body = layout.payload_perm;
  std::sort(head.begin(), head.end());
  std::sort(body.begin(), body.end());
  EXPECT_EQ(head, header_region(40, 30));
  EXPECT_EQ(body, payload_region(40, 30));
  EXPECT_EQ(layout.channel_count(), 3600u);
}

TEST(Layout, TooSmallRasterIsCapacityError) {
  EXPECT_THROW(check_layout_floor(1, 43), CapacityError);
  EXPECT_THROW(build_layout(1, 43, Digest{}, Digest{}, Digest{}), CapacityError);
  EXPECT_THROW(check_layout_floor(1, 130), CapacityError);
  EXPECT_NO_THROW(check_layout_floor(1, 131));
}

TEST(Capacity, BudgetFormula) {
  EXPECT_EQ(capacity(1024, 1024), 392'952u);
  EXPECT_EQ(capacity(512, 512), 98'040u);
  EXPECT_EQ(capacity(256, 256), 24'312u);
  EXPECT_EQ(capacity(16, 16), 0u);
  EXPECT_EQ(capacity(1, 1), 0u);
  for (std::uint32_t w : {100u, 333u, 640u}) {
    for (std::uint32_t h : {77u, 480u}) {
      std::uint64_t bits = 3ull * w * h;
      std::int64_t expected = static_cast<std::int64_t>((bits - 512) / 8) - 200;
      EXPECT_EQ(capacity(w, h), static_cast<std::uint64_t>(std::max<std::int64_t>(0, expected)));
    }
  }
}

TEST(Embed, RoundTripsThroughTraversal) {
  std::mt19937_64 rng(12);
  Image cover = test::random_image(64, 48, 12);
  auto perm = payload_permutation(64, 48, test::random_digest(rng));
  Bits bits(5000);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  Image stego = embed_bits(cover, bits, perm);
  EXPECT_EQ(extract_bits(stego, bits.size(), perm), bits);
  EXPECT_TRUE(extract_bits(stego, 0, perm).empty());

  std::size_t changed = 0;
  for (std::size_t i = 0; i < cover.pixels.size(); ++i) {
    int d = std::abs(int{stego.pixels[i]} - int{cover.pixels[i]});
    ASSERT_LE(d, 1);
    changed += d;
  }
  EXPECT_LE(changed, bits.size());
  // Channels outside the first bits.size() traversal positions are untouched.
  std::set<std::uint32_t> used(perm.begin(), perm.begin() + bits.size());
  for (std::size_t k = 0; k < cover.rgb_size(); ++k) {
    if (!used.count(static_cast<std::uint32_t>(k))) {
      ASSERT_EQ(stego.rgb(k), cover.rgb(k));
    }
  }
}

TEST(Embed, InPlaceMatchesByValue) {
  std::mt19937_64 rng(13);
  Image cover = test::random_image(20, 20, 13);
  auto perm = header_permutation(20, 20, test::random_digest(rng));
  Bits bits(kHeaderBits);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  Image a = embed_bits(cover, bits, perm);
  Image b = cover;
  embed_bits_in_place(b, bits, perm);
  EXPECT_EQ(a, b);
}

TEST(Embed, OverflowIsCapacityError) {
  Image cover(16, 16);
  auto perm = header_permutation(16, 16, Digest{});
  Bits bits(kHeaderBits + 1, 1);
  EXPECT_THROW(embed_bits(cover, bits, perm), CapacityError);
  EXPECT_THROW(extract_bits(cover, kHeaderBits + 1, perm), ParameterError);
}

TEST(Embed, AlphaPlaneIsNeverTouched) {
  Image cover = test::random_image(32, 32, 21, 4);
  auto perm = payload_permutation(32, 32, Digest{});
  Bits bits(perm.size(), 1);
  Image stego = embed_bits(cover, bits, perm);
  for (std::size_t p = 0; p < cover.pixel_count(); ++p) {
    ASSERT_EQ(stego.pixels[p * 4 + 3], cover.pixels[p * 4 + 3]);
  }
  EXPECT_EQ(extract_bits(stego, bits.size(), perm), bits);
}

TEST(Traversal, WrongGateKeyScramblesPositions) {
  // 190 x 180 gives a payload region of 102,344 channels.
  std::mt19937_64 rng(44);
  Digest sigma_p = test::random_digest(rng);
  Digest kq = test::random_digest(rng);
  Digest kq_wrong = kq;
  kq_wrong[0] ^= 1;
  auto right = payload_permutation(190, 180, payload_traversal_seed(sigma_p, kq));
  auto wrong = payload_permutation(190, 180, payload_traversal_seed(sigma_p, kq_wrong));
  ASSERT_EQ(right.size(), 102'344u);
  std::size_t same = 0;
  for (std::size_t i = 0; i < right.size(); ++i) same += right[i] == wrong[i];
  EXPECT_LE(static_cast<double>(same), 0.01 * right.size());

  Image cover = test::random_image(190, 180, 44);
  Bits bits(8000);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1);
  Image stego = embed_bits(cover, bits, right);
  Bits read = extract_bits(stego, bits.size(), wrong);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) agree += read[i] == bits[i];
  EXPECT_NEAR(static_cast<double>(agree) / bits.size(), 0.5, 0.05);
}

TEST(Traversal, SeedIsHashOfPayloadSeedAndGateKey) {
  std::mt19937_64 rng(45);
  Digest a = test::random_digest(rng);
  Digest b = test::random_digest(rng);
  EXPECT_EQ(payload_traversal_seed(a, b), sha256({a, b}));
}

TEST(Png, RoundTripIsLossless) {
  for (std::uint8_t channels : {3, 4}) {
    Image img = test::random_image(37, 19, 3, channels);
    Bytes png = encode_png(img);
    EXPECT_EQ(decode_png(png), img);
    EXPECT_EQ(encode_png(img), png) << "encoder must be deterministic";
  }
}

TEST(Png, NonRgb8InputsNeedExplicitConversion) {
  EXPECT_THROW(load_png(test::data_path("gray16.png")), FormatError);
  EXPECT_THROW(load_png(test::data_path("palette.png")), FormatError);
  Image gray = load_png(test::data_path("gray16.png"), PngReadOptions{true});
  EXPECT_EQ(gray.channels, 3);
  EXPECT_NO_THROW(gray.validate());
  Image pal = load_png(test::data_path("palette.png"), PngReadOptions{true});
  EXPECT_NO_THROW(pal.validate());
  EXPECT_THROW(decode_png(to_bytes("not a png")), FormatError);
}

TEST(Png, RgbaFixtureKeepsAlpha) {
  Image rgba = load_png(test::data_path("rgba_pil.png"));
  EXPECT_EQ(rgba.channels, 4);
  EXPECT_EQ(rgba.width, 24u);
  EXPECT_EQ(rgba.height, 16u);
  EXPECT_EQ(decode_png(encode_png(rgba)), rgba);
}

}  // namespace
}  // namespace qgk
