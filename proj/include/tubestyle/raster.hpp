#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "tubestyle/camera.hpp"
#include "tubestyle/stylemap.hpp"
#include "tubestyle/tubegen.hpp"

namespace tubestyle {

struct Rgba8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    std::uint8_t a = 255;

    bool operator==(const Rgba8&) const = default;
};

inline constexpr float kBackgroundDepth = std::numeric_limits<float>::infinity();
inline constexpr std::uint16_t kNoProvenance = 0xFFFF;

// One worker's off-screen rendition. Row-major, origin top-left, y down.
struct FrameTile {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<Rgba8> color;
    std::vector<float> depth;
    std::vector<std::uint16_t> provenance;
    Rgba8 background{0, 0, 0, 255};

    FrameTile() = default;
    FrameTile(std::uint32_t w, std::uint32_t h, Rgba8 bg = {0, 0, 0, 255});

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t index(std::uint32_t x, std::uint32_t y) const { return static_cast<std::size_t>(y) * width + x; }

    // Buffers only; the background field is bookkeeping.
    bool same_pixels(const FrameTile& o) const {
        return width == o.width && height == o.height && color == o.color && depth == o.depth &&
               provenance == o.provenance;
    }
};

void clear(FrameTile& tile, Rgba8 background);

std::uint8_t quantize_unit(double v);

// Headlight Lambert shading with transparency folded against the background.
Rgba8 shade(const Rgb& baseRgb, double alpha, const Vec3& normal, const Vec3& viewDir, const Rgb& background);

struct RasterStats {
    std::size_t trianglesDrawn = 0;
    std::size_t trianglesDiscarded = 0;
    std::size_t pixelsWritten = 0;
};

// Triangles are drawn in ascending index order; the z-test is strict less-than,
// so among equal-depth fragments the first triangle wins.
RasterStats rasterize_mesh(FrameTile& tile, const TubeMesh& mesh, std::span<const VertexStyle> styles,
                           const Camera& cam, std::uint16_t workerId);

}  // namespace tubestyle
