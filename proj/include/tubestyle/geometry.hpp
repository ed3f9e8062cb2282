#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tubestyle/vec3.hpp"

namespace tubestyle {

// Minimum separation between consecutive polyline vertices; tube framing divides by it.
inline constexpr double kMinSegmentLength = 1e-9;

struct Polyline {
    std::vector<Vec3> vertices;
    std::uint32_t id = 0;
};

struct Aabb {
    Vec3 lo;
    Vec3 hi;

    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.y >= lo.y && p.z >= lo.z && p.x <= hi.x && p.y <= hi.y && p.z <= hi.z;
    }
    Vec3 center() const { return (lo + hi) * 0.5; }
    double diagonal() const { return length(hi - lo); }
};

struct Dataset {
    std::vector<Polyline> polylines;
    std::size_t totalVertices = 0;
    Aabb bounds;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    // 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Validates polylines, assigns ids 0..n-1 in order, computes totals and bounds.
Dataset make_dataset(std::vector<Polyline> polylines);

Dataset parse_dataset(std::istream& in);
Dataset load_dataset(const std::filesystem::path& path);

// Deterministic bundle of perturbed helical arcs filling roughly [-0.5, 0.5]^3.
Dataset generate_synthetic_bundle(std::size_t count, std::size_t verticesPer, std::uint64_t seed);

// Serializes in the text polyline format read by parse_dataset.
void write_dataset(std::ostream& out, const Dataset& dataset);

}  // namespace tubestyle
