#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "afterimage/assignment.hpp"
#include "afterimage/pattern.hpp"
#include "afterimage/raster.hpp"
#include "afterimage/rule_set.hpp"

namespace afterimage {

inline constexpr int kDefaultBlur = 13;

struct RenderOptions {
  bool convolve_bias = false;
  bool crosshair = true;
  CrosshairStyle crosshair_style;
};

/// Images of one sequence: a bias image and one trigger per target pattern.
struct RenderedSequence {
  PixelImage bias;
  std::vector<PixelImage> triggers;
  /// Cell values before painting, over the covering grid.
  Grid<Intensity> bias_cells;
  std::vector<Grid<Intensity>> trigger_cells;
  /// Target patterns expanded to the covering grid.
  std::vector<TargetPattern> patterns;
};

/// Centers `pattern` on the geometry's covering grid (full and partial
/// cells); added cells take the background level. Throws DomainError when
/// the pattern has more cells than the grid.
TargetPattern fit_to_geometry(const TargetPattern& pattern, const GridGeometry& geometry);

/// assign -> paint both -> blur the trigger (and the bias, if asked) ->
/// crosshair on both. Further patterns get extra triggers derived from the
/// same bias cells, which requires a bias-ambiguous rule set. Deterministic
/// in seed.
RenderedSequence render_pair(std::span<const TargetPattern> patterns, const RuleSet& rs,
                             const GridGeometry& geometry, int n_blur, std::uint64_t seed,
                             const RenderOptions& options = {});

RenderedSequence render_pair(const TargetPattern& pattern, const RuleSet& rs,
                             const GridGeometry& geometry, int n_blur, std::uint64_t seed,
                             const RenderOptions& options = {});

/// Viewing dry run: a black/white chequer bias followed by the same chequer
/// with black replaced by `dark_trigger` grey.
RenderedSequence render_chequer(const GridGeometry& geometry, int n_blur,
                                double dark_trigger = 0.9, const RenderOptions& options = {});

/// Target pattern shown with level i as grey (i - 1) / (n - 1), no crosshair.
PixelImage render_pattern_preview(const TargetPattern& pattern, int level_count,
                                  const GridGeometry& geometry);

}  // namespace afterimage
