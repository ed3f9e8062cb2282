#include "tubestyle/raster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubestyle {
namespace {

constexpr int kSubpixelBits = 8;
constexpr std::int64_t kSubpixel = 1 << kSubpixelBits;
constexpr std::int64_t kHalfPixel = kSubpixel / 2;
// Keeps fixed-point edge products inside int64. Triangles reaching beyond are discarded.
constexpr double kGuardBandPixels = double(1 << 20);

struct RasterVertex {
    std::int64_t x = 0;
    std::int64_t y = 0;
    double depth = 0.0;
    bool valid = false;
};

constexpr std::int64_t edge(const RasterVertex& a, const RasterVertex& b, std::int64_t px, std::int64_t py) {
    return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// For positive-area triangles in y-down coordinates: top edges run horizontally
// to the right, left edges run upward.
constexpr bool is_top_left(const RasterVertex& a, const RasterVertex& b) {
    const std::int64_t dy = b.y - a.y;
    const std::int64_t dx = b.x - a.x;
    return dy < 0 || (dy == 0 && dx > 0);
}

constexpr bool covers(std::int64_t w, bool topLeft) { return w > 0 || (w == 0 && topLeft); }

Rgb to_unit(const Rgba8& c) { return {c.r / 255.0, c.g / 255.0, c.b / 255.0}; }

}  // namespace

FrameTile::FrameTile(std::uint32_t w, std::uint32_t h, Rgba8 bg) : width(w), height(h) { clear(*this, bg); }

void clear(FrameTile& tile, Rgba8 background) {
    const std::size_t n = tile.pixel_count();
    tile.background = background;
    tile.color.assign(n, background);
    tile.depth.assign(n, kBackgroundDepth);
    tile.provenance.assign(n, kNoProvenance);
}

std::uint8_t quantize_unit(double v) {
    const double scaled = std::floor(v * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

Rgba8 shade(const Rgb& baseRgb, double alpha, const Vec3& normal, const Vec3& viewDir, const Rgb& background) {
    const double light = 0.2 + 0.8 * std::max(0.0, -dot(normal, viewDir));
    Rgba8 out;
    std::uint8_t* channels[3] = {&out.r, &out.g, &out.b};
    for (int c = 0; c < 3; ++c) {
        const double lit = baseRgb[c] * light;
        *channels[c] = quantize_unit(alpha * lit + (1.0 - alpha) * background[c]);
    }
    out.a = 255;
    return out;
}

RasterStats rasterize_mesh(FrameTile& tile, const TubeMesh& mesh, std::span<const VertexStyle> styles,
                           const Camera& cam, std::uint16_t workerId) {
    if (styles.size() != mesh.vertex_count()) {
        throw std::invalid_argument("style count does not match mesh vertex count");
    }
    if (tile.pixel_count() == 0) {
        return {};
    }
    const Projector projector(cam);
    const Vec3 viewDir = projector.forward();
    const Rgb background = to_unit(tile.background);

    std::vector<RasterVertex> verts(mesh.vertex_count());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto sp = projector.project(mesh.positions[i]);
        if (!sp || std::abs(sp->x) > kGuardBandPixels || std::abs(sp->y) > kGuardBandPixels) {
            continue;
        }
        verts[i] = {std::llround(sp->x * kSubpixel), std::llround(sp->y * kSubpixel), sp->depth, true};
    }

    RasterStats stats;
    const std::int64_t maxX = tile.width - 1;
    const std::int64_t maxY = tile.height - 1;
    for (const auto& tri : mesh.triangles) {
        std::uint32_t i0 = tri[0];
        std::uint32_t i1 = tri[1];
        std::uint32_t i2 = tri[2];
        if (!verts[i0].valid || !verts[i1].valid || !verts[i2].valid) {
            ++stats.trianglesDiscarded;
            continue;
        }
        std::int64_t area = edge(verts[i0], verts[i1], verts[i2].x, verts[i2].y);
        if (area == 0) {
            continue;
        }
        if (area < 0) {
            std::swap(i1, i2);
            area = -area;
        }
        const RasterVertex& a = verts[i0];
        const RasterVertex& b = verts[i1];
        const RasterVertex& c = verts[i2];

        // Pixel centers sit at (px + 0.5) in pixel units.
        auto first_pixel = [](std::int64_t lo) {
            return lo - kHalfPixel <= 0 ? 0 : (lo - kHalfPixel + kSubpixel - 1) / kSubpixel;
        };
        auto last_pixel = [](std::int64_t hi) {
            return hi - kHalfPixel < 0 ? -1 : (hi - kHalfPixel) / kSubpixel;
        };
        const std::int64_t x0 = std::max<std::int64_t>(0, first_pixel(std::min({a.x, b.x, c.x})));
        const std::int64_t x1 = std::min(maxX, last_pixel(std::max({a.x, b.x, c.x})));
        const std::int64_t y0 = std::max<std::int64_t>(0, first_pixel(std::min({a.y, b.y, c.y})));
        const std::int64_t y1 = std::min(maxY, last_pixel(std::max({a.y, b.y, c.y})));
        if (x0 > x1 || y0 > y1) {
            continue;
        }
        ++stats.trianglesDrawn;

        const bool tl0 = is_top_left(b, c);
        const bool tl1 = is_top_left(c, a);
        const bool tl2 = is_top_left(a, b);
        const double invArea = 1.0 / static_cast<double>(area);
        const double invZ0 = 1.0 / a.depth;
        const double invZ1 = 1.0 / b.depth;
        const double invZ2 = 1.0 / c.depth;
        const VertexStyle& s0 = styles[i0];
        const VertexStyle& s1 = styles[i1];
        const VertexStyle& s2 = styles[i2];
        const Vec3& n0 = mesh.normals[i0];
        const Vec3& n1 = mesh.normals[i1];
        const Vec3& n2 = mesh.normals[i2];

        for (std::int64_t py = y0; py <= y1; ++py) {
            const std::int64_t sy = py * kSubpixel + kHalfPixel;
            for (std::int64_t px = x0; px <= x1; ++px) {
                const std::int64_t sx = px * kSubpixel + kHalfPixel;
                const std::int64_t w0 = edge(b, c, sx, sy);
                const std::int64_t w1 = edge(c, a, sx, sy);
                const std::int64_t w2 = edge(a, b, sx, sy);
                if (!covers(w0, tl0) || !covers(w1, tl1) || !covers(w2, tl2)) {
                    continue;
                }
                const double l0 = w0 * invArea * invZ0;
                const double l1 = w1 * invArea * invZ1;
                const double l2 = w2 * invArea * invZ2;
                const double invZ = l0 + l1 + l2;
                const float depth = static_cast<float>(1.0 / invZ);
                const std::size_t idx = static_cast<std::size_t>(py) * tile.width + static_cast<std::size_t>(px);
                if (!(depth < tile.depth[idx])) {
                    continue;
                }
                const double q0 = l0 / invZ;
                const double q1 = l1 / invZ;
                const double q2 = l2 / invZ;
                const Rgb rgb{q0 * s0.rgb[0] + q1 * s1.rgb[0] + q2 * s2.rgb[0],
                              q0 * s0.rgb[1] + q1 * s1.rgb[1] + q2 * s2.rgb[1],
                              q0 * s0.rgb[2] + q1 * s1.rgb[2] + q2 * s2.rgb[2]};
                const double alpha = q0 * s0.alpha + q1 * s1.alpha + q2 * s2.alpha;
                Vec3 normal = n0 * q0 + n1 * q1 + n2 * q2;
                const double len = length(normal);
                normal = len > 0.0 ? normal / len : -viewDir;

                tile.color[idx] = shade(rgb, alpha, normal, viewDir, background);
                tile.depth[idx] = depth;
                tile.provenance[idx] = workerId;
                ++stats.pixelsWritten;
            }
        }
    }
    return stats;
}

}  // namespace tubestyle
