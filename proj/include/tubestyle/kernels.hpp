#pragma once

// Data-parallel kernels used on the hot paths. Each OpenMP kernel has a serial
// twin with identical results; the serial versions are the test references.

#include <cstdint>
#include <span>
#include <vector>

#include "tubestyle/camera.hpp"
#include "tubestyle/raster.hpp"
#include "tubestyle/ranksort.hpp"

namespace tubestyle::kernels {

// Per-pixel winner selection. Ties in (depth, provenance) fall back to the
// packed color so the operation stays commutative on arbitrary inputs.
inline bool fragment_wins(float da, std::uint16_t pa, const Rgba8& ca, float db, std::uint16_t pb, const Rgba8& cb) {
    if (da != db) {
        return da < db;
    }
    if (pa != pb) {
        return pa < pb;
    }
    const auto pack = [](const Rgba8& c) {
        return (std::uint32_t(c.r) << 24) | (std::uint32_t(c.g) << 16) | (std::uint32_t(c.b) << 8) | c.a;
    };
    return pack(ca) < pack(cb);
}

void composite_pair_serial(FrameTile& acc, const FrameTile& incoming);
void composite_pair_omp(FrameTile& acc, const FrameTile& incoming);

// cells[i] = {depth of positions[i], idOffset + i}
void depth_cells_serial(const Camera& cam, std::span<const Vec3> positions, std::uint32_t idOffset,
                        std::vector<DepthCell>& cells);
void depth_cells_omp(const Camera& cam, std::span<const Vec3> positions, std::uint32_t idOffset,
                     std::vector<DepthCell>& cells);

// Same contract and errors as build_hash_index.
void hash_index_serial(std::span<const DepthCell> merged, HashIndex& out);
void hash_index_omp(std::span<const DepthCell> merged, HashIndex& out);

}  // namespace tubestyle::kernels
