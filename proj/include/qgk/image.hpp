// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

#include "qgk/bytes.hpp"

namespace qgk {

/// Interleaved 8-bit raster, 3 (RGB) or 4 (RGBA) channels, row-major.
///
/// Steganographic operations address the image through its flattened RGB
/// channel index space: k = (y * width + x) * 3 + c with c in {R, G, B}.
/// The alpha plane, when present, is never part of that space.
struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint8_t channels = 3;
  Bytes pixels;

  Image() = default;
  Image(std::uint32_t w, std::uint32_t h, std::uint8_t c = 3);

  bool has_alpha() const { return channels == 4; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  /// Size of the flattened RGB channel index space, 3 * W * H.
  std::size_t rgb_size() const { return pixel_count() * 3; }

  std::uint8_t& rgb(std::size_t k) {
    return pixels[(k / 3) * channels + k % 3];
  }
  std::uint8_t rgb(std::size_t k) const {
    return pixels[(k / 3) * channels + k % 3];
  }

  /// Throws FormatError when dimensions, channel count and buffer disagree.
  void validate() const;

  friend bool operator==(const Image&, const Image&) = default;
};

/// Packed RGB bytes (alpha dropped), row-major.
Bytes rgb_plane(const Image& image);

/// Copy of the image with the alpha plane removed.
Image to_rgb(const Image& image);

struct PngReadOptions {
  /// Expand paletted/gray inputs and strip 16-bit depth instead of failing.
  bool convert = false;
};

/// Decodes PNG data. By default only 8-bit RGB and RGBA are accepted.
Image decode_png(ByteView data, const PngReadOptions& options = {});

/// Deterministic PNG encoding: fixed compression level 9 and fixed filter.
Bytes encode_png(const Image& image);

Image load_png(const std::filesystem::path& path,
               const PngReadOptions& options = {});
void save_png(const std::filesystem::path& path, const Image& image);

/// Decodes baseline or progressive JPEG data to RGB8.
Image decode_jpeg(ByteView data);

/// Decodes PNG or JPEG by signature, converting to 8-bit RGB/RGBA.
Image decode_any_image(ByteView data);
Image load_any_image(const std::filesystem::path& path);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);

enum class ResizeFilter { bilinear, nearest };

/// Resamples to width x height using pixel-center alignment and edge clamping.
/// Works on every channel including alpha.
Image resize(const Image& image, std::uint32_t width, std::uint32_t height,
             ResizeFilter filter = ResizeFilter::bilinear);

}  // namespace qgk
