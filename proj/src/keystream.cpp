// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/keystream.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "qgk/errors.hpp"

namespace qgk {

Keystream::Keystream(const Digest& seed) : seed_(seed) {}

void Keystream::refill() {
  std::array<std::uint8_t, 8> ctr;
  for (int i = 0; i < 8; ++i) {
    ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  }
  block_ = hasher_.update(seed_).update(ctr).finish();
  ++counter_;
  pos_ = 0;
}

std::uint8_t Keystream::next_byte() {
  if (pos_ == block_.size()) refill();
  return block_[pos_++];
}

void Keystream::read(std::span<std::uint8_t> out) {
  for (auto& b : out) b = next_byte();
}

Bytes Keystream::take(std::size_t n) {
  Bytes out(n);
  read(out);
  return out;
}

std::uint64_t Keystream::next_word() {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | next_byte();
  return v;
}

std::uint64_t Keystream::uniform(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("uniform bound must be positive");
  // 2^64 mod bound, computed without 128-bit arithmetic.
  std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  if (rem == 0) return next_word() % bound;
  std::uint64_t limit = 0 - rem;  // floor(2^64 / bound) * bound
  for (;;) {
    std::uint64_t w = next_word();
    if (w < limit) return w % bound;
  }
}

double Keystream::unit() {
  return std::ldexp(static_cast<double>(next_word() >> 11), -53);
}

std::vector<std::uint32_t> keyed_permutation(std::vector<std::uint32_t> indices,
                                             const Digest& seed) {
  if (indices.empty()) throw ParameterError("cannot permute an empty list");
  Keystream ks(seed);
  for (std::size_t i = indices.size() - 1; i >= 1; --i) {
    auto j = static_cast<std::size_t>(ks.uniform(i + 1));
    std::swap(indices[i], indices[j]);
  }
  return indices;
}

}  // namespace qgk
