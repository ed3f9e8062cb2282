#pragma once

#include <cstdint>
#include <vector>

#include "tubestyle/geometry.hpp"

namespace tubestyle::runtime {

// Polylines [sidx, eidx) assigned to one worker, plus the global id of its first vertex.
struct Partition {
    std::uint32_t workerId = 0;
    std::size_t sidx = 0;
    std::size_t eidx = 0;
    std::size_t vertexIdOffset = 0;
    std::size_t vertexCount = 0;

    std::size_t size() const { return eidx - sidx; }
    bool operator==(const Partition&) const = default;
};

// Even split by floor(n / P); the last worker takes the remainder. Vertex fields are zero.
std::vector<Partition> partition_ranges(std::size_t n, std::uint32_t workers);

// partition_ranges plus vertex counts and their exclusive prefix sums.
std::vector<Partition> partition_dataset(const Dataset& dataset, std::uint32_t workers);

}  // namespace tubestyle::runtime
