#include "tubestyle/runtime/partition.hpp"

#include <stdexcept>

namespace tubestyle::runtime {

std::vector<Partition> partition_ranges(std::size_t n, std::uint32_t workers) {
    if (workers < 1) {
        throw std::invalid_argument("worker count must be >= 1");
    }
    const std::size_t chunk = n / workers;
    std::vector<Partition> parts(workers);
    for (std::uint32_t w = 0; w < workers; ++w) {
        parts[w].workerId = w;
        parts[w].sidx = chunk * w;
        parts[w].eidx = (w + 1 == workers) ? n : chunk * (w + 1);
    }
    return parts;
}

std::vector<Partition> partition_dataset(const Dataset& dataset, std::uint32_t workers) {
    auto parts = partition_ranges(dataset.polylines.size(), workers);
    std::size_t offset = 0;
    for (auto& p : parts) {
        p.vertexIdOffset = offset;
        for (std::size_t i = p.sidx; i < p.eidx; ++i) {
            p.vertexCount += dataset.polylines[i].vertices.size();
        }
        offset += p.vertexCount;
    }
    return parts;
}

}  // namespace tubestyle::runtime
