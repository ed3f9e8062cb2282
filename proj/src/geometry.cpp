#include "tubestyle/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace tubestyle {
namespace {

void validate_polyline(const Polyline& line, std::size_t sourceLine) {
    if (line.vertices.size() < 2) {
        throw ParseError(sourceLine, "polyline has fewer than 2 vertices");
    }
    for (std::size_t i = 1; i < line.vertices.size(); ++i) {
        if (length(line.vertices[i] - line.vertices[i - 1]) <= kMinSegmentLength) {
            throw ParseError(sourceLine, "coincident consecutive vertices at index " + std::to_string(i));
        }
    }
}

Aabb bounds_of(const std::vector<Polyline>& polylines) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Aabb box{{inf, inf, inf}, {-inf, -inf, -inf}};
    for (const auto& line : polylines) {
        for (const auto& v : line.vertices) {
            box.lo = {std::min(box.lo.x, v.x), std::min(box.lo.y, v.y), std::min(box.lo.z, v.z)};
            box.hi = {std::max(box.hi.x, v.x), std::max(box.hi.y, v.y), std::max(box.hi.z, v.z)};
        }
    }
    return box;
}

// mt19937_64 output is fully specified by the standard; the distributions are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

Vec3 random_unit(Rng& rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

}  // namespace

Dataset make_dataset(std::vector<Polyline> polylines) {
    if (polylines.empty()) {
        throw ParseError(0, "no polylines");
    }
    Dataset ds;
    for (std::size_t i = 0; i < polylines.size(); ++i) {
        validate_polyline(polylines[i], 0);
        polylines[i].id = static_cast<std::uint32_t>(i);
        ds.totalVertices += polylines[i].vertices.size();
    }
    ds.bounds = bounds_of(polylines);
    ds.polylines = std::move(polylines);
    return ds;
}

Dataset parse_dataset(std::istream& in) {
    std::vector<Polyline> polylines;
    std::string text;
    std::size_t lineNo = 0;
    while (std::getline(in, text)) {
        ++lineNo;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') {
            continue;
        }
        std::vector<double> coords;
        const char* p = text.data();
        const char* end = text.data() + text.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) {
                ++p;
            }
            if (p == end) {
                break;
            }
            double value = 0.0;
            auto [next, ec] = std::from_chars(p, end, value);
            if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t' && *next != '\r')) {
                const char* tokEnd = p;
                while (tokEnd < end && *tokEnd != ' ' && *tokEnd != '\t') {
                    ++tokEnd;
                }
                throw ParseError(lineNo, "non-numeric coordinate '" + std::string(p, tokEnd) + "'");
            }
            if (!std::isfinite(value)) {
                throw ParseError(lineNo, "non-finite coordinate");
            }
            coords.push_back(value);
            p = next;
        }
        if (coords.size() % 3 != 0) {
            throw ParseError(lineNo, "coordinate count " + std::to_string(coords.size()) + " is not a multiple of 3");
        }
        Polyline line;
        line.id = static_cast<std::uint32_t>(polylines.size());
        for (std::size_t i = 0; i < coords.size(); i += 3) {
            line.vertices.push_back({coords[i], coords[i + 1], coords[i + 2]});
        }
        validate_polyline(line, lineNo);
        polylines.push_back(std::move(line));
    }
    return make_dataset(std::move(polylines));
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open dataset '" + path.string() + "'");
    }
    return parse_dataset(in);
}

Dataset generate_synthetic_bundle(std::size_t count, std::size_t verticesPer, std::uint64_t seed) {
    if (count < 1) {
        throw std::invalid_argument("synthetic bundle needs count >= 1");
    }
    if (verticesPer < 2) {
        throw std::invalid_argument("synthetic bundle needs verticesPer >= 2");
    }
    Rng rng(seed);
    std::vector<Polyline> polylines(count);
    for (auto& line : polylines) {
        // A helix wound around a gently bent axis; the bend keeps tubes from being parallel.
        const Vec3 start{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
        const Vec3 axis = random_unit(rng);
        const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        const Vec3 u = normalize(cross(axis, helper));
        const Vec3 w = cross(axis, u);
        const double span = rng.uniform(0.3, 0.6);
        const double bend = rng.uniform(-0.25, 0.25);
        const double coilRadius = rng.uniform(0.005, 0.04);
        const double turns = rng.uniform(0.5, 3.0);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);

        line.vertices.reserve(verticesPer);
        for (std::size_t i = 0; i < verticesPer; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(verticesPer - 1);
            const double s = t - 0.5;
            const double angle = phase + 2.0 * std::numbers::pi * turns * t;
            const Vec3 onAxis = start + axis * (span * s) + u * (bend * (s * s - 0.25));
            line.vertices.push_back(onAxis + (u * std::cos(angle) + w * std::sin(angle)) * coilRadius);
        }
    }
    return make_dataset(std::move(polylines));
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
    std::ostringstream buf;
    buf.precision(17);
    for (const auto& line : dataset.polylines) {
        bool first = true;
        for (const auto& v : line.vertices) {
            buf << (first ? "" : " ") << v.x << ' ' << v.y << ' ' << v.z;
            first = false;
        }
        buf << '\n';
    }
    out << buf.str();
}

}  // namespace tubestyle
