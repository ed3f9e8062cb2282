#include "cli_options.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace tubestyle::cli {

void add_scene_options(CLI::App& app, SceneOptions& opts) {
    auto* source = app.add_option_group("source", "Geometry source");
    source->add_option("--dataset", opts.dataset, "Polyline text file");
    source->add_option("--synthetic", opts.synthetic, "Synthetic bundle COUNT,VERTS,SEED");
    source->require_option(1);

    app.add_option("--camera", opts.camera, "px,py,pz,fx,fy,fz,ux,uy,uz (default: frame the data)");
    app.add_option("--fov", opts.fov, "Vertical field of view in degrees")->capture_default_str();
    app.add_option("--size", opts.size, "Image size WxH")->capture_default_str();
    app.add_option("--map", opts.map, "Depth-mapped variables: any of size,color,value,alpha or none")
        ->capture_default_str();
    app.add_option("--radius", opts.radius, "Tube radius range MIN,MAX");
    app.add_option("--near-color", opts.nearColor, "Near color R,G,B in [0,1]");
    app.add_option("--far-color", opts.farColor, "Far color R,G,B in [0,1]");
    app.add_option("--value-range", opts.valueRange, "Luminance factor range MIN,MAX");
    app.add_option("--alpha-range", opts.alphaRange, "Opacity range MIN,MAX");
    app.add_option("--orientation", opts.orientation, "near-max or near-min")
        ->check(CLI::IsMember({"near-max", "near-min"}))
        ->capture_default_str();
    app.add_option("--tube-sides", opts.tubeSides, "Tube tessellation sides")
        ->check(CLI::Range(3u, 256u))
        ->capture_default_str();
    app.add_option("--background", opts.background, "Background R,G,B in 0..255")->capture_default_str();
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* flag) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size()) {
            throw std::invalid_argument(std::string(flag) + ": '" + item + "' is not a number");
        }
        out.push_back(v);
    }
    if (expected != 0 && out.size() != expected) {
        throw std::invalid_argument(std::string(flag) + " expects " + std::to_string(expected) +
                                    " comma-separated values");
    }
    return out;
}

std::vector<std::uint32_t> parse_worker_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    for (double v : parse_numbers(text, 0, "--workers")) {
        if (v < 1 || v != static_cast<std::uint32_t>(v)) {
            throw std::invalid_argument("--workers entries must be positive integers");
        }
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) {
        throw std::invalid_argument("--workers needs at least one count");
    }
    return out;
}

Viewport parse_size(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) {
        throw std::invalid_argument("--size must look like WxH");
    }
    const auto w = parse_numbers(text.substr(0, x), 1, "--size");
    const auto h = parse_numbers(text.substr(x + 1), 1, "--size");
    if (w[0] < 1 || h[0] < 1 || w[0] > 16384 || h[0] > 16384) {
        throw std::invalid_argument("--size dimensions must lie in [1, 16384]");
    }
    return {static_cast<std::uint32_t>(w[0]), static_cast<std::uint32_t>(h[0])};
}

Dataset build_dataset(const SceneOptions& opts) {
    if (!opts.dataset.empty()) {
        return load_dataset(opts.dataset);
    }
    const auto v = parse_numbers(opts.synthetic, 3, "--synthetic");
    if (v[0] < 1 || v[1] < 2 || v[2] < 0) {
        throw std::invalid_argument("--synthetic needs COUNT >= 1, VERTS >= 2, SEED >= 0");
    }
    return generate_synthetic_bundle(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                                     static_cast<std::uint64_t>(v[2]));
}

Camera build_camera(const SceneOptions& opts, const Dataset& dataset) {
    const Viewport viewport = parse_size(opts.size);
    if (opts.camera.empty()) {
        return frame_bounds(dataset.bounds.lo, dataset.bounds.hi, opts.fov, viewport);
    }
    const auto c = parse_numbers(opts.camera, 9, "--camera");
    return make_camera({c[0], c[1], c[2]}, {c[3], c[4], c[5]}, {c[6], c[7], c[8]}, opts.fov, viewport);
}

MappingSpec build_mapping(const SceneOptions& opts) {
    MappingSpec spec;
    spec.enabled = parse_variable_set(opts.map);
    if (!opts.radius.empty()) {
        const auto r = parse_numbers(opts.radius, 2, "--radius");
        spec.radius = {r[0], r[1]};
    }
    if (!opts.nearColor.empty()) {
        const auto c = parse_numbers(opts.nearColor, 3, "--near-color");
        spec.nearColor = {c[0], c[1], c[2]};
    }
    if (!opts.farColor.empty()) {
        const auto c = parse_numbers(opts.farColor, 3, "--far-color");
        spec.farColor = {c[0], c[1], c[2]};
    }
    if (!opts.valueRange.empty()) {
        const auto r = parse_numbers(opts.valueRange, 2, "--value-range");
        spec.value = {r[0], r[1]};
    }
    if (!opts.alphaRange.empty()) {
        const auto r = parse_numbers(opts.alphaRange, 2, "--alpha-range");
        spec.alpha = {r[0], r[1]};
    }
    spec.orientation = opts.orientation == "near-min" ? Orientation::NearIsMin : Orientation::NearIsMax;
    validate(spec);
    return spec;
}

runtime::RenderSettings build_render_settings(const SceneOptions& opts) {
    runtime::RenderSettings settings;
    settings.tubeSides = opts.tubeSides;
    const auto bg = parse_numbers(opts.background, 3, "--background");
    for (double ch : bg) {
        if (ch < 0 || ch > 255) {
            throw std::invalid_argument("--background channels must lie in 0..255");
        }
    }
    settings.background = {static_cast<std::uint8_t>(bg[0]), static_cast<std::uint8_t>(bg[1]),
                           static_cast<std::uint8_t>(bg[2]), 255};
    return settings;
}

}  // namespace tubestyle::cli
