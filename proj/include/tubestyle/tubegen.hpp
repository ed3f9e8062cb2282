#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tubestyle/geometry.hpp"

namespace tubestyle {

struct Frame {
    Vec3 tangent;
    Vec3 normal;
    Vec3 binormal;
};

// Parallel-transport frames along the polyline.
std::vector<Frame> sweep_frames(const Polyline& polyline);

inline constexpr std::uint32_t kDefaultTubeSides = 6;

struct TubeMesh {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<std::uint32_t> sourceVertex;  // global id of the originating polyline vertex
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::uint32_t polylineId = 0;

    std::size_t vertex_count() const { return positions.size(); }
};

// Rings of `sides` vertices per polyline vertex, two triangles per quad, no caps.
// firstGlobalVertex is the global id of the polyline's first vertex.
TubeMesh tessellate_tube(const Polyline& polyline, std::span<const double> radii, std::uint32_t sides,
                         std::uint32_t firstGlobalVertex = 0);

constexpr std::size_t tube_vertex_count(std::size_t numPts, std::uint32_t sides) { return sides * numPts; }
constexpr std::size_t tube_triangle_count(std::size_t numPts, std::uint32_t sides) {
    return numPts < 2 ? 0 : 2 * static_cast<std::size_t>(sides) * (numPts - 1);
}

}  // namespace tubestyle
