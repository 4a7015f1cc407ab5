// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <initializer_list>
#include <memory>

#include "qgk/bytes.hpp"

namespace qgk {

/// Incremental SHA-256. This is the system hash H used for every derivation.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(ByteView data);
  Sha256& update(std::string_view text) { return update(as_bytes(text)); }

  /// Returns the digest and resets the context for reuse.
  Digest finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Digest sha256(ByteView data);

/// Hash of the concatenation of the given parts.
Digest sha256(std::initializer_list<ByteView> parts);

}  // namespace qgk
