#pragma once

#include "tubestyle/camera.hpp"
#include "tubestyle/geometry.hpp"
#include "tubestyle/raster.hpp"
#include "tubestyle/ranksort.hpp"
#include "tubestyle/runtime/worker.hpp"
#include "tubestyle/stylemap.hpp"

namespace tubestyle::runtime {

struct SequentialResult {
    FrameTile image;
    HashIndex polylineIndex;  // empty unless size mapping is enabled
    HashIndex meshIndex;      // empty unless a mesh-rank variable is enabled
    std::uint32_t sortRounds = 0;
};

// Single-context reference pipeline: no partitions, no channels, one global
// sort per pass. Used to check the parallel engine.
SequentialResult render_sequential(const Dataset& dataset, const Camera& cam, const MappingSpec& spec,
                                   const RenderSettings& settings);

}  // namespace tubestyle::runtime
