#include "afterimage/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "afterimage/errors.hpp"

namespace afterimage {
namespace {

void png_write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void png_flush_noop(png_structp) {}

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void png_read_from_span(png_structp png, png_bytep data, png_size_t length) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + length > cur->bytes.size()) png_error(png, "truncated PNG");
  std::memcpy(data, cur->bytes.data() + cur->pos, length);
  cur->pos += length;
}

// libpng reports errors by longjmp; the message is parked here first.
struct PngError {
  char message[256] = {};
};

[[noreturn]] void png_error_jump(png_structp png, png_const_charp msg) {
  auto* err = static_cast<PngError*>(png_get_error_ptr(png));
  std::snprintf(err->message, sizeof err->message, "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

}  // namespace

Raster to_raster(const PixelImage& image) {
  Raster r{image.width(), image.height(), image.has_overlay() ? 3 : 1, {}};
  r.pixels = image.has_overlay() ? image.to_rgb() : image.grey().data();
  return r;
}

std::vector<std::uint8_t> encode_png(const PixelImage& image) { return encode_png(to_raster(image)); }

std::vector<std::uint8_t> encode_png(const Raster& raster) {
  std::vector<std::uint8_t> out;
  PngError err;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, png_error_jump,
                                            png_warning_ignore);
  if (png == nullptr) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  const std::size_t stride = static_cast<std::size_t>(raster.width) * static_cast<std::size_t>(raster.channels);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(std::string("PNG encode: ") + err.message);
  }
  png_set_write_fn(png, &out, png_write_to_vector, png_flush_noop);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width),
               static_cast<png_uint_32>(raster.height), 8,
               raster.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < raster.height; ++y) {
    png_write_row(png, raster.pixels.data() + stride * static_cast<std::size_t>(y));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

Raster decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw ParseError("not a PNG file");
  }
  PngError err;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, png_error_jump,
                                           png_warning_ignore);
  if (png == nullptr) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  ReadCursor cursor{bytes, 0};
  Raster r;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError(std::string("PNG decode: ") + err.message);
  }
  png_set_read_fn(png, &cursor, png_read_from_span);
  png_read_info(png, info);
  const auto color = png_get_color_type(png, info);
  const auto depth = png_get_bit_depth(png, info);
  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  r.width = static_cast<int>(png_get_image_width(png, info));
  r.height = static_cast<int>(png_get_image_height(png, info));
  r.channels = png_get_channels(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  r.pixels.resize(stride * static_cast<std::size_t>(r.height));
  rows.resize(static_cast<std::size_t>(r.height));
  for (std::size_t y = 0; y < rows.size(); ++y) rows[y] = r.pixels.data() + stride * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return r;
}

std::vector<std::uint8_t> encode_pgm(const PixelImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  std::vector<std::uint8_t> plane = image.grey().data();
  for (const auto& [yx, c] : image.overlay()) {
    const double luma = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
    plane[image.grey().index(yx.second, yx.first)] = static_cast<std::uint8_t>(std::lround(luma));
  }
  out.insert(out.end(), plane.begin(), plane.end());
  return out;
}

PgmImage parse_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  int line = 1;
  const auto skip_space = [&] {
    while (pos < bytes.size()) {
      const char c = static_cast<char>(bytes[pos]);
      if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line;
        ++pos;
      } else {
        break;
      }
    }
  };
  const auto read_int = [&](const char* what) {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw ParseError(std::string("PGM: expected ") + what, line, what);
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1 << 20) throw ParseError(std::string("PGM: ") + what + " too large", line, what);
      ++pos;
    }
    return static_cast<int>(v);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw ParseError("PGM: expected magic P2 or P5", 1, "magic");
  }
  const bool binary = bytes[1] == '5';
  pos = 2;
  PgmImage img;
  img.width = read_int("width");
  img.height = read_int("height");
  img.maxval = read_int("maxval");
  if (img.width < 1 || img.height < 1) throw ParseError("PGM: empty image", line, "width");
  if (img.maxval < 1 || img.maxval > 255) {
    throw ParseError("PGM: maxval must be 1..255", line, "maxval");
  }
  img.values = Grid<int>(img.width, img.height);
  const std::size_t n = img.values.size();
  if (binary) {
    if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
      throw ParseError("PGM: missing separator before raster", line, "raster");
    }
    ++pos;
    if (bytes.size() - pos < n) throw ParseError("PGM: truncated raster", line, "raster");
    for (std::size_t i = 0; i < n; ++i) img.values.data()[i] = bytes[pos + i];
  } else {
    for (std::size_t i = 0; i < n; ++i) img.values.data()[i] = read_int("pixel");
  }
  for (int v : img.values.data()) {
    if (v > img.maxval) throw ParseError("PGM: pixel exceeds maxval", line, "pixel");
  }
  return img;
}

PixelImage decode_pgm(std::span<const std::uint8_t> bytes) {
  const PgmImage pgm = parse_pgm(bytes);
  if (pgm.maxval != 255) throw ParseError("PGM: expected maxval 255 for an image", 0, "maxval");
  PixelImage img(pgm.width, pgm.height);
  for (std::size_t i = 0; i < pgm.values.size(); ++i) {
    img.grey().data()[i] = static_cast<std::uint8_t>(pgm.values.data()[i]);
  }
  return img;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace afterimage
