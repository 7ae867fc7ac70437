#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "afterimage/grid.hpp"
#include "afterimage/raster.hpp"

namespace afterimage {

/// Decoded raster: 1 (grey) or 3 (RGB) interleaved 8-bit channels.
struct Raster {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;

  friend bool operator==(const Raster&, const Raster&) = default;
};

/// The raster a PixelImage encodes to: grey when it has no overlay, RGB
/// composite otherwise.
Raster to_raster(const PixelImage& image);

/// 8-bit PNG, greyscale without overlay and RGB with one. No timestamps or
/// text chunks, so equal images give equal bytes.
std::vector<std::uint8_t> encode_png(const PixelImage& image);
std::vector<std::uint8_t> encode_png(const Raster& raster);
Raster decode_png(std::span<const std::uint8_t> bytes);

/// Binary P5 greyscale. Overlay pixels are flattened to their BT.601 luma.
std::vector<std::uint8_t> encode_pgm(const PixelImage& image);

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  Grid<int> values;
};

/// P2 (plain) or P5 (binary, maxval <= 255) with '#' comments. Throws
/// ParseError.
PgmImage parse_pgm(std::span<const std::uint8_t> bytes);

/// Raw grey plane as a PixelImage, maxval must be 255.
PixelImage decode_pgm(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace afterimage
