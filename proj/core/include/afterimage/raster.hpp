#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "afterimage/grid.hpp"
#include "afterimage/intensity.hpp"

namespace afterimage {

/// Square cells of `cell_px` pixels on a fixed-size image. The grid is
/// anchored so that a cell corner sits on the image center; cells that do not
/// fit entirely at the borders are partial ("margin") cells.
struct GridGeometry {
  int cell_px = 25;
  int image_width = 800;
  int image_height = 600;

  /// Throws DomainError unless 1 <= cell_px <= 600 and the image size is
  /// positive and even.
  void validate() const;

  int center_x() const { return image_width / 2; }
  int center_y() const { return image_height / 2; }

  /// Cells lying entirely inside the image.
  int full_columns() const { return 2 * (center_x() / cell_px); }
  int full_rows() const { return 2 * (center_y() / cell_px); }

  /// Cells needed to cover every pixel, partial cells included.
  int covering_columns() const { return 2 * ((center_x() + cell_px - 1) / cell_px); }
  int covering_rows() const { return 2 * ((center_y() + cell_px - 1) / cell_px); }

  /// Width of the partial-cell strip on each side.
  int margin_x() const { return center_x() - (center_x() / cell_px) * cell_px; }
  int margin_y() const { return center_y() - (center_y() / cell_px) * cell_px; }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr auto operator<=>(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kHairlineGreen{0, 255, 0};
inline constexpr Rgb kBorderBlack{0, 0, 0};

/// 8-bit greyscale pixels plus an optional colored overlay that sits on top
/// of them (the fixation crosshair). Filters only touch the grey plane.
class PixelImage {
 public:
  PixelImage() = default;
  PixelImage(int width, int height, std::uint8_t fill = 0) : grey_(width, height, fill) {}

  int width() const { return grey_.width(); }
  int height() const { return grey_.height(); }

  Grid<std::uint8_t>& grey() { return grey_; }
  const Grid<std::uint8_t>& grey() const { return grey_; }
  std::uint8_t at(int x, int y) const { return grey_.at(x, y); }

  /// Keyed by (y, x). Throws std::out_of_range outside the image.
  void set_overlay(int x, int y, Rgb color);
  const std::map<std::pair<int, int>, Rgb>& overlay() const { return overlay_; }
  bool has_overlay() const { return !overlay_.empty(); }

  /// Composited RGB triplets, row-major.
  std::vector<std::uint8_t> to_rgb() const;

  friend bool operator==(const PixelImage&, const PixelImage&) = default;

 private:
  Grid<std::uint8_t> grey_;
  std::map<std::pair<int, int>, Rgb> overlay_;
};

/// Paints `cells` as constant cell_px x cell_px blocks. Cell (c, r) starts at
/// x = cx + (c - cells.width() / 2) * m, y = cy + (r - cells.height() / 2) * m,
/// so a cell corner lies on the image center for any grid size. Pixels not
/// covered by any cell take `fill`.
PixelImage paint_cells(const Grid<Intensity>& cells, const GridGeometry& geometry, Intensity fill);

/// n x n mean filter, n odd. Reads outside the image take the nearest pixel
/// inside it; means are rounded half away from zero. The overlay is copied
/// unchanged. Throws DomainError for even or non-positive n.
PixelImage convolve_uniform(const PixelImage& image, int n_blur);

/// Fixation crosshair: two perpendicular 1-px green hairlines of
/// `arm_length` pixels crossing at the image center, inside a black frame
/// `border_px` thick around each arm. The horizontal hairline spans
/// x in [cx - L/2, cx + L/2 - 1] at y = cy; the vertical one likewise.
/// The frame is the union of both hairline rectangles grown by border_px on
/// every side, minus the hairline pixels.
struct CrosshairStyle {
  int arm_length = 40;
  int border_px = 4;
};

/// Adds the crosshair to the overlay; idempotent.
PixelImage draw_crosshair(const PixelImage& image, const CrosshairStyle& style = {});

/// Black frame pixel count: 2 (L + 2g)(2g + 1) - (2g + 1)^2 - (2L - 1).
/// 704 for the default L = 40, g = 4.
long crosshair_border_pixel_count(const CrosshairStyle& style = {});

/// Green pixel count: 2L - 1.
long crosshair_hairline_pixel_count(const CrosshairStyle& style = {});

}  // namespace afterimage
