#include <benchmark/benchmark.h>

#include "specden/filters.hpp"
#include "specden/losses.hpp"
#include "specden/noise.hpp"
#include "specden/radial_denoiser.hpp"
#include "specden/scenes.hpp"
#include "specden/spectrum.hpp"

using namespace specden;

namespace {

Image scene(int size) {
  SceneParams params;
  params.width = params.height = size;
  return synth_scene(params, 1);
}

void BM_Dft2(benchmark::State& state) {
  const Image img = scene(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft2(img));
}
// 96 and 160 are not powers of two and take the direct path.
BENCHMARK(BM_Dft2)->Arg(64)->Arg(96)->Arg(128)->Arg(160)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_AzimuthalIntegral(benchmark::State& state) {
  const SpectrumMap F = dft2(scene(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(azimuthal_integral(F));
}
BENCHMARK(BM_AzimuthalIntegral)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_GuidedFilter(benchmark::State& state) {
  const Image img = scene(128);
  const Image noisy = add_awgn(img, 25, 2);
  for (auto _ : state) benchmark::DoNotOptimize(guided_filter(noisy, noisy, {static_cast<int>(state.range(0)), 0.01}));
}
BENCHMARK(BM_GuidedFilter)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Ssim(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const Image a = scene(size);
  const Image b = add_awgn(a, 25, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ssim(a, b));
}
BENCHMARK(BM_Ssim)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_ApplyGains(benchmark::State& state) {
  const Image img = add_awgn(scene(128), 50, 4);
  const RadialGain g = RadialGain::ones(65);
  for (auto _ : state) benchmark::DoNotOptimize(apply_gains(img, g));
}
BENCHMARK(BM_ApplyGains)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
