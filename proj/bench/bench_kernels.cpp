#include <benchmark/benchmark.h>

#include <random>

#include "pixelneat/arena/render.hpp"
#include "pixelneat/arena/sim.hpp"
#include "pixelneat/harness/policy.hpp"
#include "pixelneat/harness/trial.hpp"
#include "pixelneat/vision/kernels.hpp"
#include "pixelneat/vision/vision.hpp"

using namespace pixelneat;
namespace k = pixelneat::vision::kernels;

namespace {

Framebuffer noise_frame() {
  std::mt19937_64 rng(1);
  Framebuffer f;
  for (auto& b : f.bytes()) b = static_cast<std::uint8_t>(rng() & 0xff);
  return f;
}

const vision::VisionSystem& vision_system() {
  static const vision::VisionSystem v = [] {
    auto s = vision::VisionSystem::from_assets({}, PIXELNEAT_ASSET_DIR);
    s.set_calibration(s.measure(arena::render(arena::reset(0))));
    return s;
  }();
  return v;
}

template <void (*Fn)(const Framebuffer&, std::span<double>)>
void BM_downscale(benchmark::State& state) {
  const Framebuffer f = noise_frame();
  std::vector<double> out(vision::kPixelInputSize);
  for (auto _ : state) {
    Fn(f, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_downscale<k::serial::downscale>)->Name("downscale/serial");
BENCHMARK(BM_downscale<k::parallel::downscale>)->Name("downscale/parallel");

template <vision::Mask (*Fn)(const Framebuffer&, const PixelRect&, const vision::HsvMaskParams&)>
void BM_mask(benchmark::State& state) {
  const Framebuffer f = arena::render(arena::reset(1));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f, vision::kDefaultBossBar, {}));
}
BENCHMARK(BM_mask<k::serial::hsv_mask>)->Name("hsv_mask_bar/serial");
BENCHMARK(BM_mask<k::parallel::hsv_mask>)->Name("hsv_mask_bar/parallel");

template <vision::Mask (*Fn)(const vision::Mask&)>
void BM_dilate(benchmark::State& state) {
  const vision::Mask m = k::serial::hsv_mask(noise_frame(), {0, 0, kFrameWidth, kFrameHeight}, {});
  for (auto _ : state) benchmark::DoNotOptimize(Fn(m));
}
BENCHMARK(BM_dilate<k::serial::dilate>)->Name("dilate_full_frame/serial");
BENCHMARK(BM_dilate<k::parallel::dilate>)->Name("dilate_full_frame/parallel");

template <bool (*Fn)(const Framebuffer&, const Framebuffer&, const PixelRect&, double)>
void BM_any_match(benchmark::State& state) {
  const Framebuffer f = arena::render(arena::reset(1));  // no banner: the common case
  const auto& t = vision_system().defeat_template();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f, t.bitmap, t.search_region, t.threshold));
}
BENCHMARK(BM_any_match<k::serial::any_match>)->Name("any_match/serial");
BENCHMARK(BM_any_match<k::parallel::any_match>)->Name("any_match/parallel");

template <std::vector<double> (*Fn)(const Framebuffer&, const Framebuffer&, const PixelRect&)>
void BM_match_scores(benchmark::State& state) {
  const Framebuffer f = arena::render(arena::reset(1));
  const auto& t = vision_system().defeat_template();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(f, t.bitmap, t.search_region));
}
BENCHMARK(BM_match_scores<k::serial::match_scores>)->Name("match_scores/serial");
BENCHMARK(BM_match_scores<k::parallel::match_scores>)->Name("match_scores/parallel");

void BM_render(benchmark::State& state) {
  const arena::SimState s = arena::reset(1);
  Framebuffer f;
  for (auto _ : state) {
    arena::render(s, f);
    benchmark::DoNotOptimize(f.bytes().data());
  }
}
BENCHMARK(BM_render);

void BM_trial(benchmark::State& state) {
  const auto& v = vision_system();
  for (auto _ : state) {
    harness::RandomPolicy p(3);
    arena::ArenaEnvironment env;
    benchmark::DoNotOptimize(harness::run_trial(p, env, v, 3, {1800, 6}));
  }
}
BENCHMARK(BM_trial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
