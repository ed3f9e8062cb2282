#include "tubestyle/camera.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubestyle {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Vec3 orthogonalize(const Vec3& up, const Vec3& dir) { return normalize(up - dir * dot(up, dir)); }

}  // namespace

void validate(const Camera& cam) {
    const Vec3 offset = cam.focal - cam.position;
    if (length(offset) == 0.0) {
        throw std::invalid_argument("camera position equals focal point");
    }
    if (length(cam.up) == 0.0 || length(cross(normalize(offset), normalize(cam.up))) < 1e-12) {
        throw std::invalid_argument("camera up is parallel to the view direction");
    }
    if (!(cam.fovY > 0.0 && cam.fovY < 180.0)) {
        throw std::invalid_argument("camera fovY must lie in (0, 180) degrees");
    }
    if (cam.viewport.width < 1 || cam.viewport.height < 1) {
        throw std::invalid_argument("viewport must be at least 1x1");
    }
}

Camera make_camera(const Vec3& position, const Vec3& focal, const Vec3& up, double fovY, Viewport viewport) {
    Camera cam{position, focal, up, fovY, viewport};
    validate(cam);
    cam.up = normalize(up);
    return cam;
}

Vec3 view_direction(const Camera& cam) { return normalize(cam.focal - cam.position); }

Camera trackball_rotate(const Camera& cam, double dxNdc, double dyNdc) {
    if (std::abs(dxNdc) > 1.0 || std::abs(dyNdc) > 1.0) {
        throw std::invalid_argument("trackball deltas must lie in [-1, 1]");
    }
    if (dxNdc == 0.0 && dyNdc == 0.0) {
        return cam;
    }
    Camera out = cam;
    const Vec3 up = normalize(cam.up);
    Vec3 offset = cam.position - cam.focal;

    if (dxNdc != 0.0) {
        offset = rotate(offset, up, 180.0 * dxNdc * kDegToRad);
    }
    if (dyNdc != 0.0) {
        const Vec3 dir = normalize(-offset);
        const Vec3 right = normalize(cross(dir, up));
        // Polar angle of the eye offset measured from `up`; keep it inside the guard band.
        const double polar = std::acos(std::clamp(dot(normalize(offset), up), -1.0, 1.0));
        const double wanted = polar - 180.0 * dyNdc * kDegToRad;
        const double clamped = std::clamp(wanted, kElevationGuard, std::numbers::pi - kElevationGuard);
        offset = rotate(offset, right, clamped - polar);
    }
    const double dist = length(cam.position - cam.focal);
    offset = normalize(offset) * dist;
    out.position = cam.focal + offset;
    out.up = orthogonalize(up, normalize(-offset));
    return out;
}

Camera roll(const Camera& cam, double degrees) {
    Camera out = cam;
    out.up = normalize(rotate(cam.up, view_direction(cam), degrees * kDegToRad));
    return out;
}

Projector::Projector(const Camera& cam)
    : eye_(cam.position),
      forward_(view_direction(cam)),
      right_(normalize(cross(forward_, cam.up))),
      trueUp_(cross(right_, forward_)),
      focalLength_(cam.viewport.height / (2.0 * std::tan(0.5 * cam.fovY * kDegToRad))),
      cx_(cam.viewport.width * 0.5),
      cy_(cam.viewport.height * 0.5) {}

std::optional<ScreenPoint> Projector::project(const Vec3& v) const {
    const Vec3 rel = v - eye_;
    const double depth = dot(rel, forward_);
    if (!(depth > kNearDepth)) {
        return std::nullopt;
    }
    const double scale = focalLength_ / depth;
    return ScreenPoint{cx_ + dot(rel, right_) * scale, cy_ - dot(rel, trueUp_) * scale, depth};
}

Camera frame_bounds(const Vec3& lo, const Vec3& hi, double fovY, Viewport viewport) {
    const Vec3 center = (lo + hi) * 0.5;
    const double radius = std::max(0.5 * length(hi - lo), 1e-6);
    const double halfY = 0.5 * fovY * kDegToRad;
    const double halfX = std::atan(std::tan(halfY) * viewport.width / viewport.height);
    const double halfFov = std::min(halfX, halfY);
    const double dist = 1.05 * radius / std::sin(halfFov);
    return make_camera(center + Vec3{0, 0, dist}, center, {0, 1, 0}, fovY, viewport);
}

}  // namespace tubestyle
