#include "tubestyle/tubegen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tubestyle {
namespace {

Vec3 tangent_at(const std::vector<Vec3>& v, std::size_t i) {
    const std::size_t last = v.size() - 1;
    if (i == 0) {
        return normalize(v[1] - v[0]);
    }
    if (i == last) {
        return normalize(v[last] - v[last - 1]);
    }
    const Vec3 central = v[i + 1] - v[i - 1];
    // A hairpin can cancel the central difference; fall back to the forward segment.
    if (length(central) <= kMinSegmentLength) {
        return normalize(v[i + 1] - v[i]);
    }
    return normalize(central);
}

Vec3 initial_normal(const Vec3& t) {
    const double ax = std::abs(t.x);
    const double ay = std::abs(t.y);
    const double az = std::abs(t.z);
    Vec3 axis{0, 0, 1};
    if (ax <= ay && ax <= az) {
        axis = {1, 0, 0};
    } else if (ay <= az) {
        axis = {0, 1, 0};
    }
    return normalize(cross(t, axis));
}

}  // namespace

std::vector<Frame> sweep_frames(const Polyline& polyline) {
    const auto& v = polyline.vertices;
    if (v.size() < 2) {
        throw std::invalid_argument("polyline needs at least 2 vertices");
    }
    std::vector<Frame> frames(v.size());
    Vec3 t = tangent_at(v, 0);
    Vec3 n = initial_normal(t);
    frames[0] = {t, n, cross(t, n)};
    for (std::size_t i = 1; i < v.size(); ++i) {
        const Vec3 tNext = tangent_at(v, i);
        const Vec3 axis = cross(t, tNext);
        const double s = length(axis);
        const double c = dot(t, tNext);
        if (s > 1e-12) {
            n = rotate(n, axis / s, std::atan2(s, c));
        }
        // Re-project to stay orthonormal against accumulated drift.
        n = normalize(n - tNext * dot(n, tNext));
        t = tNext;
        frames[i] = {t, n, cross(t, n)};
    }
    return frames;
}

TubeMesh tessellate_tube(const Polyline& polyline, std::span<const double> radii, std::uint32_t sides,
                         std::uint32_t firstGlobalVertex) {
    if (sides < 3) {
        throw std::invalid_argument("tube needs at least 3 sides, got " + std::to_string(sides));
    }
    const std::size_t numPts = polyline.vertices.size();
    if (radii.size() != numPts) {
        throw std::invalid_argument("radii count does not match polyline vertex count");
    }
    for (double r : radii) {
        if (!(r > 0.0)) {
            throw std::invalid_argument("tube radius must be > 0");
        }
    }
    const auto frames = sweep_frames(polyline);

    std::vector<double> cosines(sides);
    std::vector<double> sines(sides);
    for (std::uint32_t j = 0; j < sides; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / sides;
        cosines[j] = std::cos(theta);
        sines[j] = std::sin(theta);
    }

    TubeMesh mesh;
    mesh.polylineId = polyline.id;
    mesh.positions.reserve(tube_vertex_count(numPts, sides));
    mesh.normals.reserve(tube_vertex_count(numPts, sides));
    mesh.sourceVertex.reserve(tube_vertex_count(numPts, sides));
    mesh.triangles.reserve(tube_triangle_count(numPts, sides));

    for (std::size_t i = 0; i < numPts; ++i) {
        const Frame& f = frames[i];
        for (std::uint32_t j = 0; j < sides; ++j) {
            const Vec3 dir = f.normal * cosines[j] + f.binormal * sines[j];
            mesh.positions.push_back(polyline.vertices[i] + dir * radii[i]);
            mesh.normals.push_back(dir);
            mesh.sourceVertex.push_back(firstGlobalVertex + static_cast<std::uint32_t>(i));
        }
    }
    for (std::uint32_t i = 0; i + 1 < numPts; ++i) {
        const std::uint32_t ring = i * sides;
        const std::uint32_t next = ring + sides;
        for (std::uint32_t j = 0; j < sides; ++j) {
            const std::uint32_t j1 = (j + 1) % sides;
            mesh.triangles.push_back({ring + j, ring + j1, next + j});
            mesh.triangles.push_back({ring + j1, next + j1, next + j});
        }
    }
    return mesh;
}

}  // namespace tubestyle
