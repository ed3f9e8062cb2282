// Serial reference kernels against their OpenMP twins, plus the single-context
// reference pipeline against the message-passing engine.

#include <algorithm>
#include <random>

#include <benchmark/benchmark.h>

#include "tubestyle/kernels.hpp"
#include "tubestyle/runtime/engine.hpp"
#include "tubestyle/runtime/sequential.hpp"

using namespace tubestyle;

namespace {

FrameTile noisy_tile(std::uint32_t w, std::uint32_t h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FrameTile t(w, h);
    for (std::size_t i = 0; i < t.pixel_count(); ++i) {
        if (rng() % 3 != 0) {
            t.depth[i] = static_cast<float>(rng() % 1000) * 0.01f;
            t.provenance[i] = static_cast<std::uint16_t>(seed);
            t.color[i] = {static_cast<std::uint8_t>(rng()), 0, 0, 255};
        }
    }
    return t;
}

template <void (*Kernel)(FrameTile&, const FrameTile&)>
void BM_Composite(benchmark::State& state) {
    const auto w = static_cast<std::uint32_t>(state.range(0));
    const FrameTile a = noisy_tile(w, w * 3 / 4, 1);
    const FrameTile b = noisy_tile(w, w * 3 / 4, 2);
    FrameTile acc = a;
    for (auto _ : state) {
        state.PauseTiming();
        acc = a;
        state.ResumeTiming();
        Kernel(acc, b);
        benchmark::DoNotOptimize(acc.color.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * a.pixel_count()));
}

std::vector<Vec3> random_points(std::size_t n) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Vec3> pts(n);
    for (auto& p : pts) {
        p = {u(rng), u(rng), u(rng)};
    }
    return pts;
}

template <void (*Kernel)(const Camera&, std::span<const Vec3>, std::uint32_t, std::vector<DepthCell>&)>
void BM_DepthCells(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)));
    const Camera cam = make_camera({0.5, 1, 8}, {0, 0, 0}, {0, 1, 0}, 30, {1024, 768});
    std::vector<DepthCell> cells;
    for (auto _ : state) {
        Kernel(cam, pts, 0, cells);
        benchmark::DoNotOptimize(cells.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * pts.size()));
}

template <void (*Kernel)(std::span<const DepthCell>, HashIndex&)>
void BM_HashIndex(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::mt19937_64 rng(4);
    std::vector<DepthCell> cells(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        cells[i] = {static_cast<float>(rng() % 100000), i};
    }
    std::sort(cells.begin(), cells.end(), depth_less);
    HashIndex idx;
    for (auto _ : state) {
        Kernel(cells, idx);
        benchmark::DoNotOptimize(idx.ranks.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

struct PipelineScene {
    Dataset dataset = generate_synthetic_bundle(400, 80, 1);
    Camera camera = frame_bounds(dataset.bounds.lo, dataset.bounds.hi, 30, {640, 480});
    MappingSpec spec = [] {
        MappingSpec s;
        s.enabled = VariableSet{VisualVariable::Size, VisualVariable::Color};
        return s;
    }();
};

void BM_SequentialPipeline(benchmark::State& state) {
    const PipelineScene scene;
    for (auto _ : state) {
        auto r = runtime::render_sequential(scene.dataset, scene.camera, scene.spec, {});
        benchmark::DoNotOptimize(r.image.color.data());
    }
}

void BM_EnginePipeline(benchmark::State& state) {
    const PipelineScene scene;
    runtime::Engine engine(scene.dataset, scene.camera, scene.spec,
                           {static_cast<std::uint32_t>(state.range(0)), {}});
    for (auto _ : state) {
        auto r = engine.render_frame();
        benchmark::DoNotOptimize(r.image.color.data());
    }
}

}  // namespace

BENCHMARK(BM_Composite<kernels::composite_pair_serial>)->Name("composite/serial")->Arg(512)->Arg(1024);
BENCHMARK(BM_Composite<kernels::composite_pair_omp>)->Name("composite/omp")->Arg(512)->Arg(1024);
BENCHMARK(BM_DepthCells<kernels::depth_cells_serial>)->Name("depth_cells/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_DepthCells<kernels::depth_cells_omp>)->Name("depth_cells/omp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_HashIndex<kernels::hash_index_serial>)->Name("hash_index/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_HashIndex<kernels::hash_index_omp>)->Name("hash_index/omp")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SequentialPipeline)->Name("pipeline/sequential")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnginePipeline)->Name("pipeline/engine")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
