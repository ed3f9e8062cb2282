#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tubestyle/camera.hpp"
#include "tubestyle/geometry.hpp"
#include "tubestyle/runtime/worker.hpp"
#include "tubestyle/stylemap.hpp"

namespace tubestyle::cli {

struct SceneOptions {
    std::string dataset;
    std::string synthetic;
    std::string camera;
    double fov = 30.0;
    std::string size = "1024x768";
    std::string map = "color";
    std::string radius;
    std::string nearColor;
    std::string farColor;
    std::string valueRange;
    std::string alphaRange;
    std::string orientation = "near-max";
    std::uint32_t tubeSides = kDefaultTubeSides;
    std::string background = "0,0,0";
};

void add_scene_options(CLI::App& app, SceneOptions& opts);

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* flag);
std::vector<std::uint32_t> parse_worker_list(const std::string& text);
Viewport parse_size(const std::string& text);

Dataset build_dataset(const SceneOptions& opts);
// Uses --camera when given, otherwise frames the dataset bounds.
Camera build_camera(const SceneOptions& opts, const Dataset& dataset);
MappingSpec build_mapping(const SceneOptions& opts);
runtime::RenderSettings build_render_settings(const SceneOptions& opts);

}  // namespace tubestyle::cli
