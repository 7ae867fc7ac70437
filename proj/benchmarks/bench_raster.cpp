#include <benchmark/benchmark.h>

#include <random>

#include <afterimage/assignment.hpp>
#include <afterimage/builtin.hpp>
#include <afterimage/image_io.hpp>
#include <afterimage/pattern.hpp>
#include <afterimage/raster.hpp>
#include <afterimage/render.hpp>

namespace afterimage {
namespace {

PixelImage noise(int w, int h) {
  std::mt19937 gen(1);
  PixelImage img(w, h);
  for (auto& v : img.grey().data()) v = static_cast<std::uint8_t>(gen());
  return img;
}

void BM_Convolve(benchmark::State& state) {
  const PixelImage img = noise(800, 600);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convolve_uniform(img, n));
  state.SetItemsProcessed(state.iterations() * 800 * 600);
}
BENCHMARK(BM_Convolve)->Arg(1)->Arg(3)->Arg(13)->Arg(51);

void BM_Assign(benchmark::State& state) {
  const TargetPattern p = uniform_pattern(160, 120, 2);
  const RuleSet rs = builtin("f6");
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(assign_intensities(p, rs, ++seed));
  state.SetItemsProcessed(state.iterations() * 160 * 120);
}
BENCHMARK(BM_Assign);

void BM_RenderWord(benchmark::State& state) {
  const TargetPattern p = rasterize_word("hello", 2, 1);
  const RuleSet rs = builtin("f4");
  const GridGeometry g{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(render_pair(p, rs, g, kDefaultBlur, 1));
}
BENCHMARK(BM_RenderWord)->Arg(25)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EncodePng(benchmark::State& state) {
  const RenderedSequence r = render_pair(rasterize_word("hello", 2, 1), builtin("f4"), GridGeometry{}, kDefaultBlur, 1);
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(r.triggers.front()));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace afterimage
