#include "afterimage/render.hpp"

#include <string>

#include "afterimage/errors.hpp"

namespace afterimage {
namespace {

PixelImage finish(PixelImage img, bool blur, int n_blur, const RenderOptions& options) {
  if (blur) img = convolve_uniform(img, n_blur);
  if (options.crosshair) img = draw_crosshair(img, options.crosshair_style);
  return img;
}

}  // namespace

TargetPattern fit_to_geometry(const TargetPattern& pattern, const GridGeometry& geometry) {
  geometry.validate();
  const int cols = geometry.covering_columns();
  const int rows = geometry.covering_rows();
  if (pattern.width() > cols || pattern.height() > rows) {
    throw DomainError("pattern of " + std::to_string(pattern.width()) + "x" +
                      std::to_string(pattern.height()) + " cells exceeds the " +
                      std::to_string(cols) + "x" + std::to_string(rows) + " grid at m = " +
                      std::to_string(geometry.cell_px));
  }
  TargetPattern out{Grid<int>(cols, rows, pattern.background_level), pattern.background_level};
  const int x0 = (cols - pattern.width()) / 2;
  const int y0 = (rows - pattern.height()) / 2;
  for (int y = 0; y < pattern.height(); ++y) {
    for (int x = 0; x < pattern.width(); ++x) out.cells.at(x0 + x, y0 + y) = pattern.at(x, y);
  }
  return out;
}

RenderedSequence render_pair(std::span<const TargetPattern> patterns, const RuleSet& rs,
                             const GridGeometry& geometry, int n_blur, std::uint64_t seed,
                             const RenderOptions& options) {
  if (patterns.empty()) throw DomainError("render needs at least one target pattern");
  if (n_blur < 1 || n_blur % 2 == 0) {
    throw DomainError("blur kernel size must be odd and positive, got " + std::to_string(n_blur));
  }
  if (patterns.size() > 1 && !is_bias_ambiguous(rs)) {
    throw PreconditionError("multi-trigger sequences need a bias-ambiguous rule set; '" +
                            rs.name() + "' is not");
  }

  RenderedSequence out;
  for (const TargetPattern& p : patterns) {
    validate_pattern(p, rs.level_count());
    out.patterns.push_back(fit_to_geometry(p, geometry));
  }

  CellAssignment first = assign_intensities(out.patterns.front(), rs, seed);
  out.bias_cells = std::move(first.bias);
  out.trigger_cells.push_back(std::move(first.trigger));
  for (std::size_t k = 1; k < out.patterns.size(); ++k) {
    out.trigger_cells.push_back(
        derive_trigger_for_bias(out.bias_cells, out.patterns[k], rs, seed, k));
  }

  // The covering grid reaches every pixel, so the fill is never visible.
  const Intensity fill = out.bias_cells.at(0, 0);
  out.bias = finish(paint_cells(out.bias_cells, geometry, fill), options.convolve_bias, n_blur,
                    options);
  for (const auto& cells : out.trigger_cells) {
    out.triggers.push_back(
        finish(paint_cells(cells, geometry, cells.at(0, 0)), true, n_blur, options));
  }
  return out;
}

RenderedSequence render_pair(const TargetPattern& pattern, const RuleSet& rs,
                             const GridGeometry& geometry, int n_blur, std::uint64_t seed,
                             const RenderOptions& options) {
  return render_pair(std::span<const TargetPattern>(&pattern, 1), rs, geometry, n_blur, seed,
                     options);
}

RenderedSequence render_chequer(const GridGeometry& geometry, int n_blur, double dark_trigger,
                                const RenderOptions& options) {
  geometry.validate();
  const int cols = geometry.covering_columns();
  const int rows = geometry.covering_rows();
  const Intensity black = quantize(0.0);
  const Intensity white = quantize(1.0);
  const Intensity grey = quantize(dark_trigger);

  RenderedSequence out;
  out.bias_cells = Grid<Intensity>(cols, rows);
  Grid<Intensity> trigger(cols, rows);
  TargetPattern pattern{Grid<int>(cols, rows, 1), 1};
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      const bool dark = (x + y) % 2 == 0;
      out.bias_cells.at(x, y) = dark ? black : white;
      trigger.at(x, y) = dark ? grey : white;
      pattern.cells.at(x, y) = dark ? 2 : 1;
    }
  }
  out.patterns.push_back(std::move(pattern));
  out.bias = finish(paint_cells(out.bias_cells, geometry, black), options.convolve_bias, n_blur,
                    options);
  out.triggers.push_back(finish(paint_cells(trigger, geometry, white), true, n_blur, options));
  out.trigger_cells.push_back(std::move(trigger));
  return out;
}

PixelImage render_pattern_preview(const TargetPattern& pattern, int level_count,
                                  const GridGeometry& geometry) {
  validate_pattern(pattern, level_count);
  const TargetPattern fitted = fit_to_geometry(pattern, geometry);
  Grid<Intensity> cells(fitted.width(), fitted.height());
  for (int y = 0; y < fitted.height(); ++y) {
    for (int x = 0; x < fitted.width(); ++x) {
      cells.at(x, y) = quantize(static_cast<double>(fitted.at(x, y) - 1) / (level_count - 1));
    }
  }
  return paint_cells(cells, geometry, cells.at(0, 0));
}

}  // namespace afterimage
