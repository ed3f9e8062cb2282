#include "tubestyle/stylemap.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tubestyle {
namespace {

void check_range(const Range& r, const char* name, double lo, double hi) {
    if (!(r.min <= r.max)) {
        throw std::invalid_argument(std::string(name) + " range has min > max");
    }
    if (r.min < lo || r.max > hi) {
        throw std::invalid_argument(std::string(name) + " range must lie within [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
}

void check_color(const Rgb& c, const char* name) {
    for (double ch : c) {
        if (!(ch >= 0.0 && ch <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " channels must lie in [0, 1]");
        }
    }
}

std::uint64_t oriented(std::uint64_t rank, std::uint64_t rankMax, Orientation o) {
    return o == Orientation::NearIsMax ? rankMax - rank : rank;
}

}  // namespace

void validate(const MappingSpec& spec) {
    if (!(spec.radius.min > 0.0)) {
        throw std::invalid_argument("radius range min must be > 0");
    }
    check_range(spec.radius, "radius", 0.0, std::numeric_limits<double>::max());
    check_range(spec.value, "value", 0.0, 1.0);
    check_range(spec.alpha, "alpha", 0.0, 1.0);
    check_color(spec.nearColor, "near color");
    check_color(spec.farColor, "far color");
}

VariableSet parse_variable_set(const std::string& text) {
    VariableSet set;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "size") {
            set.set(VisualVariable::Size);
        } else if (item == "color") {
            set.set(VisualVariable::Color);
        } else if (item == "value") {
            set.set(VisualVariable::Value);
        } else if (item == "alpha" || item == "transparency") {
            set.set(VisualVariable::Transparency);
        } else if (item == "none" || item.empty()) {
            continue;
        } else {
            throw std::invalid_argument("unknown visual variable '" + item + "'");
        }
    }
    return set;
}

std::string format_variable_set(VariableSet set) {
    std::string out;
    auto add = [&](VisualVariable v, const char* name) {
        if (set.has(v)) {
            out += out.empty() ? "" : ",";
            out += name;
        }
    };
    add(VisualVariable::Size, "size");
    add(VisualVariable::Color, "color");
    add(VisualVariable::Value, "value");
    add(VisualVariable::Transparency, "alpha");
    return out.empty() ? "none" : out;
}

double linear_map(std::uint64_t rank, std::uint64_t rankMax, double vMin, double vMax) {
    if (rankMax == 0) {
        return 0.5 * (vMin + vMax);
    }
    if (rank > rankMax) {
        throw std::out_of_range("rank exceeds rankMax");
    }
    if (rank == rankMax) {
        return vMax;
    }
    const double t = static_cast<double>(rank) / static_cast<double>(rankMax);
    const double v = vMin + t * (vMax - vMin);
    return std::clamp(v, std::min(vMin, vMax), std::max(vMin, vMax));
}

VertexStyle style_vertex(std::uint64_t rank, std::uint64_t rankMax, const MappingSpec& spec, const Rgb& baseColor) {
    const std::uint64_t x = rankMax == 0 ? 0 : oriented(rank, rankMax, spec.orientation);
    VertexStyle style;
    style.radius = spec.enabled.has(VisualVariable::Size) ? linear_map(x, rankMax, spec.radius.min, spec.radius.max)
                                                          : spec.radius.mid();
    if (spec.enabled.has(VisualVariable::Color)) {
        for (int c = 0; c < 3; ++c) {
            style.rgb[c] = linear_map(x, rankMax, spec.nearColor[c], spec.farColor[c]);
        }
    } else {
        style.rgb = baseColor;
    }
    if (spec.enabled.has(VisualVariable::Value)) {
        const double factor = linear_map(x, rankMax, spec.value.min, spec.value.max);
        for (double& ch : style.rgb) {
            ch *= factor;
        }
    }
    style.alpha = spec.enabled.has(VisualVariable::Transparency) ? linear_map(x, rankMax, spec.alpha.min, spec.alpha.max)
                                                                 : 1.0;
    return style;
}

std::vector<double> radii_for_polylines(std::span<const std::uint32_t> lineRanks, std::uint64_t rankMax,
                                        const MappingSpec& spec) {
    if (!spec.enabled.has(VisualVariable::Size)) {
        throw std::logic_error("radii_for_polylines requires size mapping to be enabled");
    }
    std::vector<double> radii(lineRanks.size());
    for (std::size_t i = 0; i < lineRanks.size(); ++i) {
        const std::uint64_t x = rankMax == 0 ? 0 : oriented(lineRanks[i], rankMax, spec.orientation);
        radii[i] = linear_map(x, rankMax, spec.radius.min, spec.radius.max);
    }
    return radii;
}

}  // namespace tubestyle
