#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "afterimage/grid.hpp"

namespace afterimage {

/// Cell grid of 1-based afterimage level indices: the shape to appear in the
/// afterimage. Cells outside the pattern (when it is placed on a larger grid)
/// take `background_level`.
struct TargetPattern {
  Grid<int> cells;
  int background_level = 1;

  int width() const { return cells.width(); }
  int height() const { return cells.height(); }
  int at(int x, int y) const { return cells.at(x, y); }
  std::size_t count(int level) const;

  friend bool operator==(const TargetPattern&, const TargetPattern&) = default;
};

TargetPattern uniform_pattern(int width, int height, int level);

/// Throws DomainError unless width, height >= 1 and every cell and the
/// background lie in 1..level_count.
void validate_pattern(const TargetPattern& pattern, int level_count);

/// Block letterforms on a 3 x 5 (M, T, W, Y, N: 5 x 5; I, 1: 1 x 5)
/// skeleton. Even skeleton rows and columns carry strokes and are
/// `stroke_cells` wide; odd ones are counters one cell wide. Letters are
/// separated by one blank column. Case-insensitive over A-Z, 0-9 and space.
///
/// With width/height 0 the pattern is the word's bounding box; otherwise the
/// word is centered in a width x height pattern. Throws DomainError on empty
/// text, stroke < 1 or a word larger than the requested size, LookupError on
/// an unsupported glyph.
TargetPattern rasterize_word(std::string_view text, int fg_level, int bg_level,
                             int stroke_cells = 2, int width = 0, int height = 0);

bool glyph_supported(char c);

/// Skeleton rows of a glyph ('X' on, '.' off); throws LookupError.
std::span<const std::string_view> glyph_rows(char c);

/// Pattern from a PGM (P2 or P5) where pixel value k means level k + 1.
/// Values >= level_count are rejected with ParseError. The background is
/// the level of the top-left pixel.
TargetPattern pattern_from_pgm(std::span<const std::uint8_t> bytes, int level_count);

}  // namespace afterimage
