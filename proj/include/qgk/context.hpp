// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "qgk/bytes.hpp"
#include "qgk/image.hpp"

namespace qgk {

/// The four factors that must all be reproduced to recover a payload.
struct RecoveryState {
  std::string password;
  std::string shared_secret;
  std::string context_string;
  Digest image_signature{};

  /// Throws ParameterError if any text factor is empty.
  void validate() const;
};

/// Master seed and its four role-separated sub-seeds.
struct SeedBundle {
  Digest master{};
  Digest header{};
  Digest payload{};
  Digest quantum{};
  Digest encrypt{};

  friend bool operator==(const SeedBundle&, const SeedBundle&) = default;
};

namespace labels {
inline constexpr std::string_view kHeader = "QGK/header";
inline constexpr std::string_view kPayload = "QGK/payload";
inline constexpr std::string_view kQuantum = "QGK/quantum";
inline constexpr std::string_view kEncrypt = "QGK/encrypt";
}  // namespace labels

/// SHA-256(BE32(W) || BE32(H) || RGB bytes row-major). Alpha is ignored, so
/// the value depends only on the decoded RGB raster and not on file encoding.
Digest compute_image_signature(const Image& image);

/// Same digest computed from a packed RGB raster.
Digest compute_image_signature(ByteView rgb, std::uint32_t width,
                               std::uint32_t height);

/// sigma = SHA-256(lp(P) || lp(S) || lp(C) || R_I), lp = BE32 length prefix.
Digest derive_master_seed(const RecoveryState& state);

/// sigma_x = SHA-256(label_x || master) for the four role labels.
SeedBundle expand_seeds(const Digest& master);

inline SeedBundle derive_seeds(const RecoveryState& state) {
  return expand_seeds(derive_master_seed(state));
}

}  // namespace qgk
