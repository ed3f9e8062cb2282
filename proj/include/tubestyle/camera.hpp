#pragma once

#include <cstdint>
#include <optional>

#include "tubestyle/vec3.hpp"

namespace tubestyle {

struct Viewport {
    std::uint32_t width = 1;
    std::uint32_t height = 1;

    bool operator==(const Viewport&) const = default;
};

// Pinhole camera. Depth is the signed eye-space distance along the view direction.
struct Camera {
    Vec3 position{0, 0, 10};
    Vec3 focal{0, 0, 0};
    Vec3 up{0, 1, 0};
    double fovY = 30.0;  // degrees
    Viewport viewport{1024, 768};

    bool operator==(const Camera&) const = default;
};

// Normalizes `up` and throws std::invalid_argument when the camera invariants fail.
Camera make_camera(const Vec3& position, const Vec3& focal, const Vec3& up, double fovY, Viewport viewport);
void validate(const Camera& cam);

Vec3 view_direction(const Camera& cam);

inline double vertex_depth(const Camera& cam, const Vec3& v, const Vec3& viewDir) {
    return dot(v - cam.position, viewDir);
}
inline double vertex_depth(const Camera& cam, const Vec3& v) { return vertex_depth(cam, v, view_direction(cam)); }

inline constexpr double kElevationGuard = 1e-4;  // radians kept between view and up

// dx rotates about `up` (azimuth), dy about the camera right axis (elevation), 180 degrees per unit.
Camera trackball_rotate(const Camera& cam, double dxNdc, double dyNdc);

// Roll: rotates `up` about the view axis. Depths are unaffected.
Camera roll(const Camera& cam, double degrees);

struct ScreenPoint {
    double x = 0.0;
    double y = 0.0;
    double depth = 0.0;
};

inline constexpr double kNearDepth = 1e-6;

// Precomputed camera basis for projecting many points.
class Projector {
public:
    explicit Projector(const Camera& cam);

    // std::nullopt when the point is behind the camera (depth <= kNearDepth).
    std::optional<ScreenPoint> project(const Vec3& v) const;

    const Vec3& forward() const { return forward_; }

private:
    Vec3 eye_;
    Vec3 forward_;
    Vec3 right_;
    Vec3 trueUp_;
    double focalLength_;
    double cx_;
    double cy_;
};

inline std::optional<ScreenPoint> project_to_screen(const Camera& cam, const Vec3& v) {
    return Projector(cam).project(v);
}

// Frames the bounding sphere of [lo, hi] looking down -Z.
Camera frame_bounds(const Vec3& lo, const Vec3& hi, double fovY, Viewport viewport);

}  // namespace tubestyle
