// Copyright 2026 The qgk Authors
// SPDX-License-Identifier: Apache-2.0

#include "qgk/image.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "qgk/errors.hpp"

namespace qgk {

Image::Image(std::uint32_t w, std::uint32_t h, std::uint8_t c)
    : width(w), height(h), channels(c) {
  pixels.assign(static_cast<std::size_t>(w) * h * c, 0);
}

void Image::validate() const {
  if (width == 0 || height == 0) throw FormatError("image has zero dimension");
  if (channels != 3 && channels != 4) {
    throw FormatError("image must have 3 or 4 channels");
  }
  if (pixels.size() != pixel_count() * channels) {
    throw FormatError("raster length does not match dimensions");
  }
  // The channel index space is addressed with 32-bit indices.
  if (rgb_size() > 0xffffffffull) throw FormatError("image too large");
}

Bytes rgb_plane(const Image& image) {
  if (!image.has_alpha()) return image.pixels;
  Bytes out;
  out.reserve(image.rgb_size());
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    const auto* px = &image.pixels[p * 4];
    out.insert(out.end(), px, px + 3);
  }
  return out;
}

Image to_rgb(const Image& image) {
  Image out;
  out.width = image.width;
  out.height = image.height;
  out.channels = 3;
  out.pixels = rgb_plane(image);
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return data;
}

void write_file(const std::filesystem::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// PNG
//
// libpng reports errors with longjmp. All C++ objects touched by the decoder
// live in the caller's frame and are passed by reference, so nothing with a
// destructor is constructed between setjmp and a possible longjmp.

namespace {

struct PngError {
  char message[256] = {};
};

void png_error_fn(png_structp png, png_const_charp msg) {
  auto* err = static_cast<PngError*>(png_get_error_ptr(png));
  std::snprintf(err->message, sizeof(err->message), "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_fn(png_structp, png_const_charp) {}

struct PngReader {
  ByteView data;
  std::size_t offset = 0;
};

void png_read_fn(png_structp png, png_bytep out, png_size_t length) {
  auto* reader = static_cast<PngReader*>(png_get_io_ptr(png));
  if (reader->data.size() - reader->offset < length) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, reader->data.data() + reader->offset, length);
  reader->offset += length;
}

enum class PngStatus { ok, libpng_error, unsupported };

PngStatus decode_png_impl(png_structp png, png_infop info, PngReader& reader,
                          bool convert, Image& out,
                          std::vector<png_bytep>& rows) {
  if (setjmp(png_jmpbuf(png))) return PngStatus::libpng_error;

  png_set_read_fn(png, &reader, png_read_fn);
  png_read_info(png, info);

  png_uint_32 w = 0;
  png_uint_32 h = 0;
  int depth = 0;
  int color = 0;
  png_get_IHDR(png, info, &w, &h, &depth, &color, nullptr, nullptr, nullptr);

  bool native = depth == 8 &&
                (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGBA);
  if (!native) {
    if (!convert) return PngStatus::unsupported;
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (depth == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
      png_set_gray_to_rgb(png);
    }
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  int channels = png_get_channels(png, info);
  if (channels != 3 && channels != 4) return PngStatus::unsupported;
  if (static_cast<std::uint64_t>(w) * h * 3 > 0xffffffffull) {
    return PngStatus::unsupported;
  }

  out.width = w;
  out.height = h;
  out.channels = static_cast<std::uint8_t>(channels);
  out.pixels.resize(static_cast<std::size_t>(w) * h * channels);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = out.pixels.data() + static_cast<std::size_t>(y) * w * channels;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  return PngStatus::ok;
}

struct PngWriter {
  Bytes* out;
};

void png_write_fn(png_structp png, png_bytep data, png_size_t length) {
  auto* writer = static_cast<PngWriter*>(png_get_io_ptr(png));
  writer->out->insert(writer->out->end(), data, data + length);
}

void png_flush_fn(png_structp) {}

bool encode_png_impl(png_structp png, png_infop info, const Image& image,
                     PngWriter& writer, std::vector<png_bytep>& rows) {
  if (setjmp(png_jmpbuf(png))) return false;

  png_set_write_fn(png, &writer, png_write_fn, png_flush_fn);
  png_set_IHDR(png, info, image.width, image.height, 8,
               image.has_alpha() ? PNG_COLOR_TYPE_RGBA : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 9);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_ALL_FILTERS);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  return true;
}

}  // namespace

Image decode_png(ByteView data, const PngReadOptions& options) {
  if (data.size() < 8 || png_sig_cmp(data.data(), 0, 8) != 0) {
    throw FormatError("not a PNG file");
  }
  PngError err;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                           png_error_fn, png_warning_fn);
  if (png == nullptr) throw FormatError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw FormatError("png_create_info_struct failed");
  }

  PngReader reader{data};
  Image out;
  std::vector<png_bytep> rows;
  PngStatus status =
      decode_png_impl(png, info, reader, options.convert, out, rows);
  png_destroy_read_struct(&png, &info, nullptr);

  switch (status) {
    case PngStatus::ok:
      return out;
    case PngStatus::unsupported:
      throw FormatError(
          "unsupported PNG layout (only 8-bit RGB/RGBA are accepted)");
    case PngStatus::libpng_error:
      break;
  }
  throw FormatError(std::string("PNG decode error: ") + err.message);
}

Bytes encode_png(const Image& image) {
  image.validate();
  PngError err;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err,
                                            png_error_fn, png_warning_fn);
  if (png == nullptr) throw FormatError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw FormatError("png_create_info_struct failed");
  }

  Bytes out;
  PngWriter writer{&out};
  std::vector<png_bytep> rows(image.height);
  std::size_t stride = static_cast<std::size_t>(image.width) * image.channels;
  for (std::uint32_t y = 0; y < image.height; ++y) {
    // libpng takes non-const row pointers but does not write through them.
    rows[y] = const_cast<png_bytep>(image.pixels.data() + y * stride);
  }
  bool ok = encode_png_impl(png, info, image, writer, rows);
  png_destroy_write_struct(&png, &info);
  if (!ok) throw FormatError(std::string("PNG encode error: ") + err.message);
  return out;
}

Image load_png(const std::filesystem::path& path,
               const PngReadOptions& options) {
  return decode_png(read_file(path), options);
}

void save_png(const std::filesystem::path& path, const Image& image) {
  write_file(path, encode_png(image));
}

// ---------------------------------------------------------------------------
// JPEG

namespace {

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  std::longjmp(mgr->jump, 1);
}

bool decode_jpeg_impl(jpeg_decompress_struct& cinfo, JpegErrorManager& mgr,
                      ByteView data, Image& out) {
  if (setjmp(mgr.jump)) return false;

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data.data(), static_cast<unsigned long>(data.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  out.width = cinfo.output_width;
  out.height = cinfo.output_height;
  out.channels = 3;
  out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * 3);
  std::size_t stride = static_cast<std::size_t>(out.width) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.pixels.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  return true;
}

}  // namespace

Image decode_jpeg(ByteView data) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager mgr{};
  cinfo.err = jpeg_std_error(&mgr.base);
  mgr.base.error_exit = jpeg_error_exit;

  Image out;
  bool ok = decode_jpeg_impl(cinfo, mgr, data, out);
  jpeg_destroy_decompress(&cinfo);
  if (!ok) throw FormatError(std::string("JPEG decode error: ") + mgr.message);
  return out;
}

Image decode_any_image(ByteView data) {
  if (data.size() >= 8 && png_sig_cmp(data.data(), 0, 8) == 0) {
    return decode_png(data, PngReadOptions{.convert = true});
  }
  if (data.size() >= 3 && data[0] == 0xff && data[1] == 0xd8 &&
      data[2] == 0xff) {
    return decode_jpeg(data);
  }
  throw FormatError("unrecognized image format (expected PNG or JPEG)");
}

Image load_any_image(const std::filesystem::path& path) {
  return decode_any_image(read_file(path));
}

// ---------------------------------------------------------------------------
// Resampling

Image resize(const Image& image, std::uint32_t width, std::uint32_t height,
             ResizeFilter filter) {
  image.validate();
  if (width == 0 || height == 0) throw ParameterError("resize to zero size");
  if (width == image.width && height == image.height) return image;

  Image out(width, height, image.channels);
  const std::size_t c = image.channels;
  const double sx = static_cast<double>(image.width) / width;
  const double sy = static_cast<double>(image.height) / height;
  const auto src = [&](std::uint32_t x, std::uint32_t y, std::size_t ch) {
    return image.pixels[(static_cast<std::size_t>(y) * image.width + x) * c + ch];
  };

  for (std::uint32_t y = 0; y < height; ++y) {
    double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0,
                           static_cast<double>(image.height - 1));
    for (std::uint32_t x = 0; x < width; ++x) {
      double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0,
                             static_cast<double>(image.width - 1));
      auto* dst = &out.pixels[(static_cast<std::size_t>(y) * width + x) * c];
      if (filter == ResizeFilter::nearest) {
        auto nx = static_cast<std::uint32_t>(std::lround(fx));
        auto ny = static_cast<std::uint32_t>(std::lround(fy));
        for (std::size_t ch = 0; ch < c; ++ch) dst[ch] = src(nx, ny, ch);
        continue;
      }
      auto x0 = static_cast<std::uint32_t>(fx);
      auto y0 = static_cast<std::uint32_t>(fy);
      std::uint32_t x1 = std::min(x0 + 1, image.width - 1);
      std::uint32_t y1 = std::min(y0 + 1, image.height - 1);
      double ax = fx - x0;
      double ay = fy - y0;
      for (std::size_t ch = 0; ch < c; ++ch) {
        double top = src(x0, y0, ch) * (1 - ax) + src(x1, y0, ch) * ax;
        double bottom = src(x0, y1, ch) * (1 - ax) + src(x1, y1, ch) * ax;
        double v = top * (1 - ay) + bottom * ay;
        dst[ch] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

}  // namespace qgk
