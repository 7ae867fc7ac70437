#include <gtest/gtest.h>

#include <map>

#include <afterimage/assignment.hpp>
#include <afterimage/builtin.hpp>
#include <afterimage/errors.hpp>
#include <afterimage/pattern.hpp>
#include <afterimage/random.hpp>
#include <afterimage/raster.hpp>
#include <afterimage/render.hpp>

#include "oracles.hpp"

namespace afterimage {
namespace {

int column_runs(const TargetPattern& p, int fg) {
  int runs = 0;
  bool in_run = false;
  for (int x = 0; x < p.width(); ++x) {
    bool any = false;
    for (int y = 0; y < p.height(); ++y) any |= p.at(x, y) == fg;
    if (any && !in_run) ++runs;
    in_run = any;
  }
  return runs;
}

Grid<std::uint8_t> random_grey(int w, int h, std::uint64_t seed) {
  SequentialRandom rng(seed, "image");
  Grid<std::uint8_t> g(w, h);
  for (auto& v : g.data()) v = static_cast<std::uint8_t>(rng.uniform(256));
  return g;
}

TEST(Font, HelloHasFiveLetterClusters) {
  const TargetPattern p = rasterize_word("hello", 2, 1, 2);
  EXPECT_GT(p.count(2), 0u);
  EXPECT_EQ(column_runs(p, 2), 5);
  EXPECT_EQ(p.height(), 8);
}

TEST(Font, StudyWordsFitTheDefaultGrid) {
  const GridGeometry g;
  for (const char* w : {"red", "low", "light", "hello", "world"}) {
    const TargetPattern p = rasterize_word(w, 2, 1, 2);
    EXPECT_LE(p.width(), g.full_columns()) << w;
    EXPECT_LE(p.height(), g.full_rows()) << w;
  }
  EXPECT_EQ(rasterize_word("hello", 2, 1).width(), 29);
  EXPECT_EQ(rasterize_word("world", 2, 1).width(), 32);
}

TEST(Font, ThickerStrokeHasMoreCells) {
  EXPECT_GT(rasterize_word("a", 2, 1, 2).count(2), rasterize_word("a", 2, 1, 1).count(2));
}

TEST(Font, Errors) {
  EXPECT_THROW(rasterize_word("", 2, 1), DomainError);
  EXPECT_THROW(rasterize_word("h!", 2, 1), LookupError);
  EXPECT_THROW(rasterize_word("hello", 2, 1, 0), DomainError);
  EXPECT_THROW(rasterize_word("hello", 2, 1, 2, 10, 10), DomainError);
  EXPECT_TRUE(glyph_supported('Q'));
  EXPECT_FALSE(glyph_supported('?'));
}

TEST(Font, CenteredInRequestedSize) {
  const TargetPattern p = rasterize_word("i", 2, 1, 1, 5, 9);
  EXPECT_EQ(p.width(), 5);
  EXPECT_EQ(p.height(), 9);
  EXPECT_EQ(p.at(2, 4), 2);
  EXPECT_EQ(p.at(0, 0), 1);
}

TEST(PatternPgm, ValuesMapToLevels) {
  const std::string pgm = "P2\n# comment\n3 2\n1\n0 1 0\n1 1 0\n";
  const TargetPattern p =
      pattern_from_pgm(std::span(reinterpret_cast<const std::uint8_t*>(pgm.data()), pgm.size()), 2);
  EXPECT_EQ(p.width(), 3);
  EXPECT_EQ(p.at(1, 0), 2);
  EXPECT_EQ(p.at(0, 0), 1);
  EXPECT_EQ(p.background_level, 1);
  const std::string bad = "P2\n2 1\n255\n0 2\n";
  EXPECT_THROW(
      pattern_from_pgm(std::span(reinterpret_cast<const std::uint8_t*>(bad.data()), bad.size()), 2),
      ParseError);
}

TEST(Geometry, CellCounts) {
  const GridGeometry m25{25};
  EXPECT_EQ(m25.full_columns(), 32);
  EXPECT_EQ(m25.full_rows(), 24);
  EXPECT_EQ(m25.margin_x(), 0);
  const GridGeometry m50{50};
  EXPECT_EQ(m50.full_columns(), 16);
  EXPECT_EQ(m50.full_rows(), 12);
  const GridGeometry m38{38};
  EXPECT_EQ(m38.full_columns(), 20);
  EXPECT_EQ(m38.full_rows(), 14);
  EXPECT_GT(m38.margin_x(), 0);
  EXPECT_EQ(m38.covering_columns(), 22);
  EXPECT_THROW((GridGeometry{0}.validate()), DomainError);
  EXPECT_THROW((GridGeometry{601}.validate()), DomainError);
}

TEST(Paint, ChequerAtM50) {
  const GridGeometry g{50};
  Grid<Intensity> cells(16, 12);
  for (int y = 0; y < 12; ++y)
    for (int x = 0; x < 16; ++x) cells.at(x, y) = quantize((x + y) % 2 ? 1.0 : 0.0);
  const PixelImage img = paint_cells(cells, g, quantize(0.5));
  std::set<int> values(img.grey().data().begin(), img.grey().data().end());
  EXPECT_EQ(values, (std::set<int>{0, 255}));
  // The image center is a cell corner: its four neighbors differ pairwise.
  EXPECT_NE(img.at(399, 299), img.at(400, 299));
  EXPECT_EQ(img.at(399, 299), img.at(400, 300));
}

TEST(Paint, MarginCellsCoverEveryPixelAtM38) {
  const GridGeometry g{38};
  Grid<Intensity> cells(g.covering_columns(), g.covering_rows(), quantize(1.0));
  const PixelImage img = paint_cells(cells, g, quantize(0.0));
  for (auto v : img.grey().data()) ASSERT_EQ(v, 255);
}

TEST(Convolution, MatchesBruteForce) {
  for (int n : {1, 3, 5, 13}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      PixelImage img(64, 64);
      img.grey() = random_grey(64, 64, s * 31 + n);
      EXPECT_EQ(convolve_uniform(img, n).grey(), oracle::box_blur(img.grey(), n)) << n << " " << s;
    }
  }
}

TEST(Convolution, NonSquareAndTinyImages) {
  for (auto [w, h] : {std::pair{1, 1}, {3, 17}, {17, 3}, {5, 5}}) {
    PixelImage img(w, h);
    img.grey() = random_grey(w, h, static_cast<std::uint64_t>(w * 100 + h));
    EXPECT_EQ(convolve_uniform(img, 13).grey(), oracle::box_blur(img.grey(), 13));
  }
}

TEST(Convolution, IdentityConstantAndBounds) {
  PixelImage img(40, 30);
  img.grey() = random_grey(40, 30, 9);
  EXPECT_EQ(convolve_uniform(img, 1), img);
  const PixelImage flat(40, 30, 77);
  for (int n : {3, 5, 13, 41}) EXPECT_EQ(convolve_uniform(flat, n), flat);
  const auto [lo, hi] = std::minmax_element(img.grey().data().begin(), img.grey().data().end());
  const PixelImage blurred = convolve_uniform(img, 5);
  for (auto v : blurred.grey().data()) {
    EXPECT_GE(v, *lo);
    EXPECT_LE(v, *hi);
  }
  EXPECT_THROW(convolve_uniform(img, 2), DomainError);
  EXPECT_THROW(convolve_uniform(img, 0), DomainError);
  EXPECT_THROW(convolve_uniform(img, -3), DomainError);
}

TEST(Convolution, StepEdgeBecomesCenteredRamp) {
  for (int n : {3, 5, 13}) {
    PixelImage img(100, 8);
    for (int y = 0; y < 8; ++y)
      for (int x = 50; x < 100; ++x) img.grey().at(x, y) = 255;
    const PixelImage out = convolve_uniform(img, n);
    int first = -1, last = -1;
    for (int x = 0; x < 100; ++x) {
      const int v = out.at(x, 4);
      if (v != 0 && v != 255) {
        if (first < 0) first = x;
        last = x;
      }
    }
    EXPECT_EQ(last - first + 1, n - 1) << n;
    EXPECT_EQ(first + last + 1, 2 * 50) << n;  // centered on the edge between 49 and 50
    for (int x = first; x <= last; ++x) {
      EXPECT_EQ(out.at(x, 4), static_cast<int>(std::round(255.0 * (x - first + 1) / n))) << n;
    }
  }
}

TEST(Crosshair, GeometryAndCounts) {
  const PixelImage img = draw_crosshair(PixelImage(800, 600, 128));
  long green = 0, black = 0;
  for (const auto& [pos, c] : img.overlay()) {
    if (c == kHairlineGreen) ++green;
    if (c == kBorderBlack) ++black;
  }
  EXPECT_EQ(green, 79);
  EXPECT_EQ(green, crosshair_hairline_pixel_count());
  EXPECT_EQ(black, crosshair_border_pixel_count());
  EXPECT_EQ(black, 704);
  // Horizontal and vertical hairlines of 40 px crossing at (400, 300).
  int h = 0, v = 0;
  for (int x = 0; x < 800; ++x) h += img.overlay().contains({300, x}) && img.overlay().at({300, x}) == kHairlineGreen;
  for (int y = 0; y < 600; ++y) v += img.overlay().contains({y, 400}) && img.overlay().at({y, 400}) == kHairlineGreen;
  EXPECT_EQ(h, 40);
  EXPECT_EQ(v, 40);
  EXPECT_EQ(draw_crosshair(img), img);
  EXPECT_EQ(img.grey(), PixelImage(800, 600, 128).grey());
}

TEST(Crosshair, BorderFormulaForOtherStyles) {
  for (CrosshairStyle s : {CrosshairStyle{20, 2}, CrosshairStyle{40, 1}, CrosshairStyle{60, 6}}) {
    const PixelImage img = draw_crosshair(PixelImage(800, 600), s);
    long black = 0;
    for (const auto& [pos, c] : img.overlay()) black += c == kBorderBlack;
    EXPECT_EQ(black, crosshair_border_pixel_count(s));
  }
}

TEST(Assignment, F1TriggerIsConstant) {
  const TargetPattern p = rasterize_word("hello", 2, 1);
  const CellAssignment a = assign_intensities(p, builtin("f1"), 5);
  for (const Intensity t : a.trigger.data()) EXPECT_EQ(t.code(), 64);
}

TEST(Assignment, UniqueRulesMakeOutputSeedIndependent) {
  const RuleSet rs("unique", 2, {make_rule(1, 0.25, 1), make_rule(0, 0.75, 2)});
  const TargetPattern p = rasterize_word("hi", 2, 1);
  EXPECT_EQ(assign_intensities(p, rs, 1), assign_intensities(p, rs, 999));
}

TEST(Assignment, F2BiasFractionNearHalf) {
  const TargetPattern p = uniform_pattern(100, 100, 2);
  const CellAssignment a = assign_intensities(p, builtin("f2"), 17);
  long zeros = 0;
  for (const Intensity b : a.bias.data()) zeros += b.code() == 0;
  EXPECT_NEAR(zeros / 1e4, 0.5, 0.02);
}

TEST(Assignment, CellsMatchRules) {
  const RuleSet rs = builtin("f6");
  SequentialRandom rng(4, "pattern");
  TargetPattern p = uniform_pattern(50, 40, 1);
  for (auto& c : p.cells.data()) c = 1 + static_cast<int>(rng.uniform(2));
  const CellAssignment a = assign_intensities(p, rs, 8);
  for (std::size_t i = 0; i < p.cells.data().size(); ++i) {
    const Rule r{a.bias.data()[i], a.trigger.data()[i], p.cells.data()[i]};
    EXPECT_NE(std::find(rs.rules().begin(), rs.rules().end(), r), rs.rules().end());
  }
}

TEST(Assignment, MissingLevelIsUnsatisfiable) {
  const TargetPattern p = uniform_pattern(3, 3, 3);
  EXPECT_THROW(assign_intensities(p, builtin("f1"), 0), UnsatisfiableError);
}

TEST(DeriveTrigger, F6UniqueMatches) {
  const RuleSet f6 = builtin("f6");
  Grid<Intensity> bias(2, 1);
  bias.at(0, 0) = quantize(0.0);
  bias.at(1, 0) = quantize(1.0);
  TargetPattern p = uniform_pattern(2, 1, 1);
  p.cells.at(1, 0) = 2;
  const Grid<Intensity> t = derive_trigger_for_bias(bias, p, f6, 1);
  EXPECT_EQ(t.at(0, 0), quantize(0.25));
  EXPECT_EQ(t.at(1, 0), quantize(0.74));
}

TEST(DeriveTrigger, Preconditions) {
  Grid<Intensity> bias(2, 1, quantize(0.0));
  const TargetPattern p = uniform_pattern(2, 1, 1);
  EXPECT_THROW(derive_trigger_for_bias(bias, p, builtin("f1"), 1), PreconditionError);
  Grid<Intensity> foreign(2, 1, quantize(0.5));
  EXPECT_THROW(derive_trigger_for_bias(foreign, p, builtin("f6"), 1), PreconditionError);
  EXPECT_THROW(derive_trigger_for_bias(bias, uniform_pattern(3, 1, 1), builtin("f6"), 1), PreconditionError);
}

TEST(Render, Deterministic) {
  const TargetPattern p = rasterize_word("hello", 2, 1);
  const RenderedSequence a = render_pair(p, builtin("f6"), GridGeometry{}, 13, 7);
  const RenderedSequence b = render_pair(p, builtin("f6"), GridGeometry{}, 13, 7);
  EXPECT_EQ(a.bias, b.bias);
  EXPECT_EQ(a.triggers, b.triggers);
  const RenderedSequence c = render_pair(p, builtin("f6"), GridGeometry{}, 13, 8);
  EXPECT_NE(a.bias, c.bias);
}

TEST(Render, F1TriggerConstantOutsideCrosshair) {
  const RenderedSequence r = render_pair(rasterize_word("hello", 2, 1), builtin("f1"), GridGeometry{}, 13, 3);
  const PixelImage& t = r.triggers.at(0);
  for (int y = 0; y < 600; ++y) {
    for (int x = 0; x < 800; ++x) {
      if (!t.overlay().contains({y, x})) {
        ASSERT_EQ(t.at(x, y), 64);
      }
    }
  }
}

TEST(Render, PreConvolutionValuesComeFromTheRuleSet) {
  const RuleSet rs = builtin("f4");
  RenderOptions o;
  o.crosshair = false;
  const RenderedSequence r = render_pair(rasterize_word("light", 2, 1), rs, GridGeometry{}, 1, 3, o);
  std::set<int> allowed_t, allowed_b;
  for (auto i : trigger_set(rs)) allowed_t.insert(i.code());
  for (auto i : bias_set(rs)) allowed_b.insert(i.code());
  for (auto v : r.triggers[0].grey().data()) ASSERT_TRUE(allowed_t.contains(v));
  for (auto v : r.bias.grey().data()) ASSERT_TRUE(allowed_b.contains(v));
}

TEST(Render, BiasUnblurredByDefault) {
  const RuleSet rs = builtin("f6");
  const RenderedSequence r = render_pair(rasterize_word("hi", 2, 1), rs, GridGeometry{}, 13, 3);
  std::set<int> values(r.bias.grey().data().begin(), r.bias.grey().data().end());
  EXPECT_EQ(values, (std::set<int>{0, 255}));
  RenderOptions o;
  o.convolve_bias = true;
  const RenderedSequence rb = render_pair(rasterize_word("hi", 2, 1), rs, GridGeometry{}, 13, 3, o);
  std::set<int> blurred(rb.bias.grey().data().begin(), rb.bias.grey().data().end());
  EXPECT_GT(blurred.size(), 2u);
}

TEST(Render, MultiTriggerSharesBias) {
  const TargetPattern pats[] = {rasterize_word("hello", 2, 1), rasterize_word("world", 2, 1)};
  const RenderedSequence r = render_pair(pats, builtin("f6"), GridGeometry{}, 13, 5);
  ASSERT_EQ(r.triggers.size(), 2u);
  ASSERT_EQ(r.trigger_cells.size(), 2u);
  const RuleSet f6 = builtin("f6");
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < r.bias_cells.data().size(); ++i) {
      const Rule rule{r.bias_cells.data()[i], r.trigger_cells[k].data()[i], r.patterns[k].cells.data()[i]};
      ASSERT_NE(std::find(f6.rules().begin(), f6.rules().end(), rule), f6.rules().end());
    }
  }
  EXPECT_THROW(render_pair(pats, builtin("f4"), GridGeometry{}, 13, 5), PreconditionError);
}

TEST(Render, PatternLargerThanGridRejected) {
  EXPECT_THROW(render_pair(uniform_pattern(40, 2, 1), builtin("f6"), GridGeometry{}, 13, 1), DomainError);
  EXPECT_THROW(render_pair(uniform_pattern(4, 2, 1), builtin("f6"), GridGeometry{}, 4, 1), DomainError);
}

TEST(Render, FitCentersWithBackground) {
  const TargetPattern p = rasterize_word("i", 2, 1, 1);
  const TargetPattern f = fit_to_geometry(p, GridGeometry{});
  EXPECT_EQ(f.width(), 32);
  EXPECT_EQ(f.height(), 24);
  EXPECT_EQ(f.count(2), p.count(2));
}

TEST(Render, ChequerDryRun) {
  const RenderedSequence r = render_chequer(GridGeometry{50}, 13);
  std::set<int> bias(r.bias.grey().data().begin(), r.bias.grey().data().end());
  EXPECT_EQ(bias, (std::set<int>{0, 255}));
  std::set<int> cells;
  for (auto i : r.trigger_cells[0].data()) cells.insert(i.code());
  EXPECT_EQ(cells, (std::set<int>{quantize(0.9).code(), 255}));
}

TEST(Render, PatternPreviewLevels) {
  const PixelImage img = render_pattern_preview(rasterize_word("hi", 3, 1), 3, GridGeometry{});
  std::set<int> values(img.grey().data().begin(), img.grey().data().end());
  EXPECT_EQ(values, (std::set<int>{0, 255}));
  EXPECT_FALSE(img.has_overlay());
}

TEST(Unlinkability, BiasIndependentOfLevelForBalancedSets) {
  for (const char* name : {"f2", "f6"}) {
    const RuleSet rs = builtin(name);
    SequentialRandom rng(99, "levels");
    TargetPattern p = uniform_pattern(100, 100, 1);
    for (auto& c : p.cells.data()) c = 1 + static_cast<int>(rng.uniform(2));
    const CellAssignment a = assign_intensities(p, rs, 12345);
    const auto biases = bias_set(rs);
    std::map<std::pair<int, int>, long> counts;
    std::map<int, long> per_level;
    for (std::size_t i = 0; i < p.cells.data().size(); ++i) {
      ++counts[{p.cells.data()[i], a.bias.data()[i].code()}];
      ++per_level[p.cells.data()[i]];
    }
    for (int lvl = 1; lvl <= 2; ++lvl) {
      for (auto b : biases) {
        EXPECT_TRUE(oracle::within_binomial(counts[{lvl, b.code()}], per_level[lvl], 1.0 / biases.size()))
            << name << " level " << lvl << " bias " << int(b.code());
      }
    }
  }
}

}  // namespace
}  // namespace afterimage
