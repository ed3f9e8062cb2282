#include "tubestyle/runtime/bench.hpp"

#include <algorithm>
#include <iomanip>
#include <stdexcept>

namespace tubestyle::runtime {
namespace {

BenchRecord measure(const Dataset& dataset, const Camera& start, const MappingSpec& spec, const BenchOptions& options,
                    std::uint32_t workers) {
    Engine engine(dataset, start, spec, {workers, options.render});
    const double dx = options.stepDegrees / 180.0;
    for (std::uint32_t i = 0; i < options.warmupFrames; ++i) {
        engine.render_frame();
    }
    engine.set_camera(start);
    BenchRecord rec;
    rec.workers = workers;
    rec.mappingMode = mapping_mode(spec);
    for (std::uint32_t f = 0; f < options.framesPerSample; ++f) {
        const FrameResult frame = engine.handle_interaction(dx, 0.0);
        rec.frameTimeMs += frame.stats.frameMs;
        rec.sortTimeMs += frame.stats.sortMs;
    }
    rec.frameTimeMs /= options.framesPerSample;
    rec.sortTimeMs /= options.framesPerSample;
    return rec;
}

}  // namespace

std::string mapping_mode(const MappingSpec& spec) {
    int count = 0;
    for (auto v : {VisualVariable::Size, VisualVariable::Color, VisualVariable::Value, VisualVariable::Transparency}) {
        count += spec.enabled.has(v) ? 1 : 0;
    }
    return count > 1 ? "multiple" : "single";
}

std::vector<BenchRecord> benchmark_run(const Dataset& dataset, const Camera& start, const MappingSpec& spec,
                                       const BenchOptions& options) {
    if (options.framesPerSample < 1) {
        throw std::invalid_argument("framesPerSample must be >= 1");
    }
    if (options.workerCounts.empty()) {
        throw std::invalid_argument("no worker counts to benchmark");
    }
    const bool hasBaseline =
        std::find(options.workerCounts.begin(), options.workerCounts.end(), 1u) != options.workerCounts.end();
    const BenchRecord baseline = measure(dataset, start, spec, options, 1);

    std::vector<BenchRecord> records;
    for (std::uint32_t p : options.workerCounts) {
        BenchRecord rec = (p == 1 && hasBaseline) ? baseline : measure(dataset, start, spec, options, p);
        rec.speedup = baseline.frameTimeMs / rec.frameTimeMs;
        rec.efficiency = rec.speedup / rec.workers;
        records.push_back(rec);
    }
    return records;
}

void write_bench_table(std::ostream& out, const std::vector<BenchRecord>& records, const Viewport& size) {
    out << "Workers\tTime(ms)\tSort(ms)\tSpeedup\tEfficiency\tMapping\tSize\n";
    const auto flags = out.flags();
    out << std::fixed;
    for (const auto& r : records) {
        out << r.workers << '\t' << std::setprecision(1) << r.frameTimeMs << '\t' << r.sortTimeMs << '\t'
            << std::setprecision(2) << r.speedup << '\t' << r.efficiency << '\t' << r.mappingMode << '\t'
            << size.width << 'x' << size.height << '\n';
    }
    out.flags(flags);
}

}  // namespace tubestyle::runtime
