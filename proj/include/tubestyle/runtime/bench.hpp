#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tubestyle/camera.hpp"
#include "tubestyle/geometry.hpp"
#include "tubestyle/runtime/engine.hpp"
#include "tubestyle/stylemap.hpp"

namespace tubestyle::runtime {

struct BenchRecord {
    std::uint32_t workers = 1;
    double frameTimeMs = 0.0;
    double sortTimeMs = 0.0;
    double speedup = 1.0;
    double efficiency = 1.0;
    std::string mappingMode;  // "single" or "multiple"
};

struct BenchOptions {
    std::vector<std::uint32_t> workerCounts{1, 2, 3, 4};
    std::uint32_t framesPerSample = 100;
    std::uint32_t warmupFrames = 1;
    double stepDegrees = 2.0;  // azimuth per frame
    RenderSettings render;
};

// One record per worker count. A P=1 baseline is measured first when the list
// lacks one; it is reported only if requested.
std::vector<BenchRecord> benchmark_run(const Dataset& dataset, const Camera& start, const MappingSpec& spec,
                                       const BenchOptions& options);

std::string mapping_mode(const MappingSpec& spec);

// Tab-separated table: Workers, Time(ms), Sort(ms), Speedup, Efficiency, Mapping, Size.
void write_bench_table(std::ostream& out, const std::vector<BenchRecord>& records, const Viewport& size);

}  // namespace tubestyle::runtime
