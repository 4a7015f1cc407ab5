// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/context.hpp"

#include "qgk/errors.hpp"
#include "qgk/hash.hpp"

namespace qgk {

void RecoveryState::validate() const {
  if (password.empty()) throw ParameterError("password must not be empty");
  if (shared_secret.empty()) {
    throw ParameterError("shared secret must not be empty");
  }
  if (context_string.empty()) {
    throw ParameterError("context string must not be empty");
  }
}

Digest compute_image_signature(ByteView rgb, std::uint32_t width,
                               std::uint32_t height) {
  if (width == 0 || height == 0) throw FormatError("image has zero dimension");
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw FormatError("raster length does not match 3 * W * H");
  }
  Bytes dims;
  append_be32(dims, width);
  append_be32(dims, height);
  return Sha256().update(dims).update(rgb).finish();
}

Digest compute_image_signature(const Image& image) {
  image.validate();
  if (!image.has_alpha()) {
    return compute_image_signature(image.pixels, image.width, image.height);
  }
  return compute_image_signature(rgb_plane(image), image.width, image.height);
}

Digest derive_master_seed(const RecoveryState& state) {
  state.validate();
  Bytes buf;
  append_length_prefixed(buf, as_bytes(state.password));
  append_length_prefixed(buf, as_bytes(state.shared_secret));
  append_length_prefixed(buf, as_bytes(state.context_string));
  append(buf, state.image_signature);
  return sha256(buf);
}

namespace {

Digest labelled(std::string_view label, const Digest& master) {
  return sha256({as_bytes(label), master});
}

}  // namespace

SeedBundle expand_seeds(const Digest& master) {
  return SeedBundle{
      .master = master,
      .header = labelled(labels::kHeader, master),
      .payload = labelled(labels::kPayload, master),
      .quantum = labelled(labels::kQuantum, master),
      .encrypt = labelled(labels::kEncrypt, master),
  };
}

}  // namespace qgk
