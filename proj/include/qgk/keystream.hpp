// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgk/bytes.hpp"
#include "qgk/hash.hpp"

namespace qgk {

/// Deterministic byte stream: block i = SHA-256(seed || BE64(i)).
class Keystream {
 public:
  explicit Keystream(const Digest& seed);

  std::uint8_t next_byte();
  void read(std::span<std::uint8_t> out);
  Bytes take(std::size_t n);

  /// Next 8 stream bytes as a big-endian word.
  std::uint64_t next_word();

  /// Uniform integer in [0, bound) by modulo rejection: words at or above
  /// floor(2^64 / bound) * bound are discarded.
  std::uint64_t uniform(std::uint64_t bound);

  /// Uniform double in [0, 1) from the top 53 bits of the next word.
  double unit();

 private:
  void refill();

  Digest seed_;
  Sha256 hasher_;
  Digest block_{};
  std::uint64_t counter_ = 0;
  std::size_t pos_ = 32;
};

/// Fisher-Yates over `indices` driven by keystream(seed): for i from the last
/// position down to 1, swap with j = uniform(i + 1).
std::vector<std::uint32_t> keyed_permutation(std::vector<std::uint32_t> indices,
                                             const Digest& seed);

}  // namespace qgk
