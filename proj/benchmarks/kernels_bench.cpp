#include <benchmark/benchmark.h>

#include <random>

#include "pfdcp/dcp.hpp"
#include "pfdcp/filters.hpp"
#include "pfdcp/guided_filter.hpp"
#include "pfdcp/pyramid.hpp"

using namespace pfdcp;

namespace {

GrayImage random_gray(int w, int h) {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    GrayImage img(w, h);
    for (double& v : img.data) v = dist(rng);
    return img;
}

RgbImage random_rgb(int w, int h) {
    std::mt19937 rng(54321);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    RgbImage img(w, h);
    for (double& v : img.data) v = dist(rng);
    return img;
}

void BM_MinFilter(benchmark::State& state) {
    const GrayImage img = random_gray(640, 480);
    const int patch = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(min_filter(img, patch));
    state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_MinFilter)->Arg(3)->Arg(15)->Arg(31);

void BM_BoxFilter(benchmark::State& state) {
    const GrayImage img = random_gray(640, 480);
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(box_filter(img, radius));
    state.SetItemsProcessed(state.iterations() * img.pixel_count());
}
BENCHMARK(BM_BoxFilter)->Arg(4)->Arg(60);

void BM_GuidedFilter(benchmark::State& state) {
    const GrayImage guide = random_gray(640, 480);
    const GrayImage input = random_gray(640, 480);
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(guided_filter(guide, input, {radius, 1e-4}));
}
BENCHMARK(BM_GuidedFilter)->Arg(15)->Arg(60);

void BM_DehazeDcp(benchmark::State& state) {
    const RgbImage img = random_rgb(620, 460);
    DehazeParams params;
    for (auto _ : state)
        benchmark::DoNotOptimize(dehaze_dcp(img, params));
}
BENCHMARK(BM_DehazeDcp)->Unit(benchmark::kMillisecond);

void BM_DehazePfdcp(benchmark::State& state) {
    const RgbImage img = random_rgb(620, 460);
    DehazeParams params;
    for (auto _ : state)
        benchmark::DoNotOptimize(dehaze_pfdcp(img, params));
}
BENCHMARK(BM_DehazePfdcp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
