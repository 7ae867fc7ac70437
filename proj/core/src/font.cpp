#include <array>
#include <cctype>
#include <span>
#include <string>
#include <string_view>

#include "afterimage/errors.hpp"
#include "afterimage/pattern.hpp"

namespace afterimage {
namespace {

struct Glyph {
  char c;
  std::array<std::string_view, 5> rows;
};

// clang-format off
constexpr Glyph kGlyphs[] = {
  {'A', {"XXX", "X.X", "XXX", "X.X", "X.X"}},
  {'B', {"XX.", "X.X", "XXX", "X.X", "XX."}},
  {'C', {"XXX", "X..", "X..", "X..", "XXX"}},
  {'D', {"XX.", "X.X", "X.X", "X.X", "XX."}},
  {'E', {"XXX", "X..", "XXX", "X..", "XXX"}},
  {'F', {"XXX", "X..", "XXX", "X..", "X.."}},
  {'G', {"XXX", "X..", "X.X", "X.X", "XXX"}},
  {'H', {"X.X", "X.X", "XXX", "X.X", "X.X"}},
  {'I', {"X", "X", "X", "X", "X"}},
  {'J', {"..X", "..X", "..X", "X.X", "XXX"}},
  {'K', {"X.X", "X.X", "XX.", "X.X", "X.X"}},
  {'L', {"X..", "X..", "X..", "X..", "XXX"}},
  {'M', {"X...X", "XX.XX", "X.X.X", "X...X", "X...X"}},
  {'N', {"X...X", "XX..X", "X.X.X", "X..XX", "X...X"}},
  {'O', {"XXX", "X.X", "X.X", "X.X", "XXX"}},
  {'P', {"XXX", "X.X", "XXX", "X..", "X.."}},
  {'Q', {"XXX", "X.X", "X.X", "XXX", "..X"}},
  {'R', {"XXX", "X.X", "XX.", "X.X", "X.X"}},
  {'S', {"XXX", "X..", "XXX", "..X", "XXX"}},
  {'T', {"XXXXX", "..X..", "..X..", "..X..", "..X.."}},
  {'U', {"X.X", "X.X", "X.X", "X.X", "XXX"}},
  {'V', {"X.X", "X.X", "X.X", "X.X", ".X."}},
  {'W', {"X...X", "X...X", "X.X.X", "XX.XX", "X...X"}},
  {'X', {"X.X", "X.X", ".X.", "X.X", "X.X"}},
  {'Y', {"X...X", ".X.X.", "..X..", "..X..", "..X.."}},
  {'Z', {"XXX", "..X", ".X.", "X..", "XXX"}},
  {'0', {"XXX", "X.X", "X.X", "X.X", "XXX"}},
  {'1', {"X", "X", "X", "X", "X"}},
  {'2', {"XXX", "..X", "XXX", "X..", "XXX"}},
  {'3', {"XXX", "..X", "XXX", "..X", "XXX"}},
  {'4', {"X.X", "X.X", "XXX", "..X", "..X"}},
  {'5', {"XXX", "X..", "XXX", "..X", "XXX"}},
  {'6', {"XXX", "X..", "XXX", "X.X", "XXX"}},
  {'7', {"XXX", "..X", "..X", "..X", "..X"}},
  {'8', {"XXX", "X.X", "XXX", "X.X", "XXX"}},
  {'9', {"XXX", "X.X", "XXX", "..X", "XXX"}},
  {' ', {"...", "...", "...", "...", "..."}},
};
// clang-format on

const Glyph* find_glyph(char c) {
  const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const Glyph& g : kGlyphs) {
    if (g.c == up) return &g;
  }
  return nullptr;
}

}  // namespace

bool glyph_supported(char c) { return find_glyph(c) != nullptr; }

std::span<const std::string_view> glyph_rows(char c) {
  const Glyph* g = find_glyph(c);
  if (g == nullptr) {
    throw LookupError(std::string("unsupported glyph '") + c + "'");
  }
  return g->rows;
}

}  // namespace afterimage
