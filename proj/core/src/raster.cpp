#include "afterimage/raster.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "afterimage/errors.hpp"

namespace afterimage {

void GridGeometry::validate() const {
  if (cell_px < 1 || cell_px > 600) {
    throw DomainError("cell size m = " + std::to_string(cell_px) + " outside 1..600");
  }
  if (image_width < 2 || image_height < 2 || image_width % 2 != 0 || image_height % 2 != 0) {
    throw DomainError("image size must be positive and even");
  }
}

void PixelImage::set_overlay(int x, int y, Rgb color) {
  if (!grey_.in_bounds(x, y)) {
    throw std::out_of_range("overlay pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                            ") outside image");
  }
  overlay_[{y, x}] = color;
}

std::vector<std::uint8_t> PixelImage::to_rgb() const {
  std::vector<std::uint8_t> out;
  out.reserve(grey_.size() * 3);
  for (std::uint8_t v : grey_.data()) {
    out.push_back(v);
    out.push_back(v);
    out.push_back(v);
  }
  for (const auto& [yx, c] : overlay_) {
    const std::size_t i = grey_.index(yx.second, yx.first) * 3;
    out[i] = c.r;
    out[i + 1] = c.g;
    out[i + 2] = c.b;
  }
  return out;
}

PixelImage paint_cells(const Grid<Intensity>& cells, const GridGeometry& geometry, Intensity fill) {
  geometry.validate();
  const int m = geometry.cell_px;
  PixelImage img(geometry.image_width, geometry.image_height, fill.code());
  auto& px = img.grey();
  const int x_origin = geometry.center_x() - (cells.width() / 2) * m;
  const int y_origin = geometry.center_y() - (cells.height() / 2) * m;
  for (int r = 0; r < cells.height(); ++r) {
    const int y0 = std::max(0, y_origin + r * m);
    const int y1 = std::min(geometry.image_height, y_origin + (r + 1) * m);
    for (int c = 0; c < cells.width(); ++c) {
      const int x0 = std::max(0, x_origin + c * m);
      const int x1 = std::min(geometry.image_width, x_origin + (c + 1) * m);
      const std::uint8_t v = cells.at(c, r).code();
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) px.at(x, y) = v;
      }
    }
  }
  return img;
}

PixelImage convolve_uniform(const PixelImage& image, int n_blur) {
  if (n_blur < 1 || n_blur % 2 == 0) {
    throw DomainError("blur kernel size must be odd and positive, got " + std::to_string(n_blur));
  }
  PixelImage out = image;
  if (n_blur == 1) return out;

  const int w = image.width();
  const int h = image.height();
  const int half = n_blur / 2;
  const auto& src = image.grey();

  // Separable integer window sums; exact, so identical to the direct 2D sum.
  Grid<std::uint32_t> rows(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t s = 0;
      for (int i = -half; i <= half; ++i) s += src.at(std::clamp(x + i, 0, w - 1), y);
      rows.at(x, y) = s;
    }
  }
  const std::uint32_t area = static_cast<std::uint32_t>(n_blur) * static_cast<std::uint32_t>(n_blur);
  auto& dst = out.grey();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t s = 0;
      for (int j = -half; j <= half; ++j) s += rows.at(x, std::clamp(y + j, 0, h - 1));
      // Half away from zero for a non-negative mean.
      dst.at(x, y) = static_cast<std::uint8_t>((2 * s + area) / (2 * area));
    }
  }
  return out;
}

PixelImage draw_crosshair(const PixelImage& image, const CrosshairStyle& style) {
  if (style.arm_length < 1 || style.border_px < 0) {
    throw DomainError("crosshair needs arm_length >= 1 and border_px >= 0");
  }
  PixelImage out = image;
  const int cx = image.width() / 2;
  const int cy = image.height() / 2;
  const int lo = -style.arm_length / 2;
  const int hi = lo + style.arm_length - 1;
  const int g = style.border_px;

  const auto put = [&](int x, int y, Rgb c) {
    if (x >= 0 && y >= 0 && x < out.width() && y < out.height()) out.set_overlay(x, y, c);
  };
  // Frame first, hairlines on top.
  for (int dy = -g; dy <= g; ++dy) {
    for (int dx = lo - g; dx <= hi + g; ++dx) {
      put(cx + dx, cy + dy, kBorderBlack);
      put(cx + dy, cy + dx, kBorderBlack);
    }
  }
  for (int d = lo; d <= hi; ++d) {
    put(cx + d, cy, kHairlineGreen);
    put(cx, cy + d, kHairlineGreen);
  }
  return out;
}

long crosshair_border_pixel_count(const CrosshairStyle& style) {
  const long L = style.arm_length;
  const long side = 2L * style.border_px + 1;
  return 2 * (L + 2L * style.border_px) * side - side * side - (2 * L - 1);
}

long crosshair_hairline_pixel_count(const CrosshairStyle& style) {
  return 2L * style.arm_length - 1;
}

}  // namespace afterimage
