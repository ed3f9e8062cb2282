#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubestyle {

using Rgb = std::array<double, 3>;

enum class VisualVariable : std::uint8_t {
    Size = 1u << 0,
    Color = 1u << 1,
    Value = 1u << 2,
    Transparency = 1u << 3,
};

// Bit set over VisualVariable.
class VariableSet {
public:
    constexpr VariableSet() = default;
    constexpr explicit VariableSet(std::uint8_t bits) : bits_(bits & 0x0F) {}
    constexpr VariableSet(std::initializer_list<VisualVariable> vars) {
        for (auto v : vars) {
            bits_ |= static_cast<std::uint8_t>(v);
        }
    }

    constexpr bool has(VisualVariable v) const { return (bits_ & static_cast<std::uint8_t>(v)) != 0; }
    constexpr void set(VisualVariable v, bool on = true) {
        bits_ = on ? (bits_ | static_cast<std::uint8_t>(v)) : (bits_ & ~static_cast<std::uint8_t>(v));
    }
    constexpr std::uint8_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool operator==(const VariableSet&) const = default;

private:
    std::uint8_t bits_ = 0;
};

enum class Orientation : std::uint8_t { NearIsMax = 0, NearIsMin = 1 };

struct Range {
    double min = 0.0;
    double max = 1.0;

    constexpr double mid() const { return 0.5 * (min + max); }
    bool operator==(const Range&) const = default;
};

struct MappingSpec {
    VariableSet enabled{VisualVariable::Color};
    Range radius{0.002, 0.008};
    Rgb nearColor{1.0, 0.85, 0.25};
    Rgb farColor{0.15, 0.3, 0.9};
    Range value{0.35, 1.0};
    Range alpha{0.25, 1.0};
    Orientation orientation = Orientation::NearIsMax;

    bool operator==(const MappingSpec&) const = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const MappingSpec& spec);

// Parses "size,color,value,alpha" (any subset, "none" for empty).
VariableSet parse_variable_set(const std::string& text);
std::string format_variable_set(VariableSet set);

struct VertexStyle {
    double radius = 0.0;
    Rgb rgb{1.0, 1.0, 1.0};
    double alpha = 1.0;
};

// Linear map of an integer rank over [0, rankMax] onto [vMin, vMax]; the
// endpoints are reproduced exactly. rankMax = 0 yields the range midpoint.
double linear_map(std::uint64_t rank, std::uint64_t rankMax, double vMin, double vMax);

VertexStyle style_vertex(std::uint64_t rank, std::uint64_t rankMax, const MappingSpec& spec, const Rgb& baseColor);

// Pass-1 radii for polyline vertices. Throws std::logic_error when size is disabled.
std::vector<double> radii_for_polylines(std::span<const std::uint32_t> lineRanks, std::uint64_t rankMax,
                                        const MappingSpec& spec);

// Styling of a mesh-vertex pass needs a depth sort only for these variables.
constexpr bool needs_mesh_ranks(const MappingSpec& spec) {
    return spec.enabled.has(VisualVariable::Color) || spec.enabled.has(VisualVariable::Value) ||
           spec.enabled.has(VisualVariable::Transparency);
}

}  // namespace tubestyle
