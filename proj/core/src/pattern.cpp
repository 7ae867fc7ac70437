#include "afterimage/pattern.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "afterimage/errors.hpp"
#include "afterimage/image_io.hpp"

namespace afterimage {
namespace {

// Stroke rows/columns (even skeleton index) are `stroke` cells, counters one.
int span_of(int skeleton_index, int stroke) { return skeleton_index % 2 == 0 ? stroke : 1; }

int scaled_extent(int skeleton_len, int stroke) {
  int total = 0;
  for (int i = 0; i < skeleton_len; ++i) total += span_of(i, stroke);
  return total;
}

}  // namespace

std::size_t TargetPattern::count(int level) const {
  return static_cast<std::size_t>(std::count(cells.data().begin(), cells.data().end(), level));
}

TargetPattern uniform_pattern(int width, int height, int level) {
  if (width < 1 || height < 1) throw DomainError("pattern needs at least one cell");
  return TargetPattern{Grid<int>(width, height, level), level};
}

void validate_pattern(const TargetPattern& pattern, int level_count) {
  if (pattern.width() < 1 || pattern.height() < 1) {
    throw DomainError("pattern needs at least one cell");
  }
  const auto bad = [&](int v) { return v < 1 || v > level_count; };
  if (bad(pattern.background_level)) {
    throw DomainError("background level " + std::to_string(pattern.background_level) +
                      " outside 1.." + std::to_string(level_count));
  }
  for (int y = 0; y < pattern.height(); ++y) {
    for (int x = 0; x < pattern.width(); ++x) {
      if (bad(pattern.at(x, y))) {
        throw DomainError("cell (" + std::to_string(x) + ", " + std::to_string(y) + ") level " +
                          std::to_string(pattern.at(x, y)) + " outside 1.." +
                          std::to_string(level_count));
      }
    }
  }
}

TargetPattern rasterize_word(std::string_view text, int fg_level, int bg_level, int stroke,
                             int width, int height) {
  if (text.empty()) throw DomainError("word is empty");
  if (stroke < 1) throw DomainError("stroke width must be >= 1 cell");
  if (fg_level < 1 || bg_level < 1) throw DomainError("levels are 1-based");

  std::vector<std::span<const std::string_view>> glyphs;
  for (char c : text) glyphs.push_back(glyph_rows(c));

  int word_w = 0;
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    if (i) word_w += 1;
    word_w += scaled_extent(static_cast<int>(glyphs[i][0].size()), stroke);
  }
  const int word_h = scaled_extent(5, stroke);
  if (width == 0) width = word_w;
  if (height == 0) height = word_h;
  if (width < word_w || height < word_h) {
    throw DomainError("word '" + std::string(text) + "' needs " + std::to_string(word_w) + "x" +
                      std::to_string(word_h) + " cells, pattern is " + std::to_string(width) +
                      "x" + std::to_string(height));
  }

  TargetPattern out{Grid<int>(width, height, bg_level), bg_level};
  int x0 = (width - word_w) / 2;
  const int y0 = (height - word_h) / 2;
  for (const auto& rows : glyphs) {
    const int cols = static_cast<int>(rows[0].size());
    int y = y0;
    for (int r = 0; r < 5; ++r) {
      const int rh = span_of(r, stroke);
      int x = x0;
      for (int c = 0; c < cols; ++c) {
        const int cw = span_of(c, stroke);
        if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 'X') {
          for (int dy = 0; dy < rh; ++dy) {
            for (int dx = 0; dx < cw; ++dx) out.cells.at(x + dx, y + dy) = fg_level;
          }
        }
        x += cw;
      }
      y += rh;
    }
    x0 += scaled_extent(cols, stroke) + 1;
  }
  return out;
}

TargetPattern pattern_from_pgm(std::span<const std::uint8_t> bytes, int level_count) {
  const PgmImage pgm = parse_pgm(bytes);
  TargetPattern out{Grid<int>(pgm.width, pgm.height, 1), 1};
  for (int y = 0; y < pgm.height; ++y) {
    for (int x = 0; x < pgm.width; ++x) {
      const int v = pgm.values.at(x, y);
      if (v >= level_count) {
        throw ParseError("pixel (" + std::to_string(x) + ", " + std::to_string(y) + ") value " +
                             std::to_string(v) + " has no level (level count " +
                             std::to_string(level_count) + ")",
                         0, "pixel");
      }
      out.cells.at(x, y) = v + 1;
    }
  }
  out.background_level = out.cells.at(0, 0);
  return out;
}

}  // namespace afterimage
