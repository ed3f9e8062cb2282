#include <iostream>

#include <CLI11.hpp>

#include "cli_options.hpp"
#include "tubestyle/runtime/bench.hpp"
#include "tubestyle/runtime/engine.hpp"
#include "tubestyle/runtime/image_io.hpp"
#include "tubestyle/runtime/server.hpp"

using namespace tubestyle;

namespace {

int run_render(const cli::SceneOptions& scene, std::uint32_t workers, const std::string& out,
               const std::string& depthOut) {
    Dataset dataset = cli::build_dataset(scene);
    const Camera cam = cli::build_camera(scene, dataset);
    const MappingSpec spec = cli::build_mapping(scene);
    runtime::Engine engine(std::move(dataset), cam, spec, {workers, cli::build_render_settings(scene)});
    const runtime::FrameResult frame = engine.render_frame();
    runtime::export_image(frame.image, out);
    if (!depthOut.empty()) {
        runtime::export_depth(frame.image, depthOut);
    }
    std::cout << runtime::encode_stats_json(frame.stats) << '\n';
    return 0;
}

int run_bench(const cli::SceneOptions& scene, const std::string& workerList, std::uint32_t frames, double step) {
    const Dataset dataset = cli::build_dataset(scene);
    const Camera cam = cli::build_camera(scene, dataset);
    const MappingSpec spec = cli::build_mapping(scene);
    runtime::BenchOptions options;
    options.workerCounts = cli::parse_worker_list(workerList);
    options.framesPerSample = frames;
    options.stepDegrees = step;
    options.render = cli::build_render_settings(scene);
    std::cerr << "# " << dataset.polylines.size() << " tubes, " << dataset.totalVertices << " polyline vertices, "
              << dataset.totalVertices * options.render.tubeSides << " tube-mesh vertices, " << frames
              << " frames per sample, map=" << format_variable_set(spec.enabled) << '\n';
    const auto records = runtime::benchmark_run(dataset, cam, spec, options);
    runtime::write_bench_table(std::cout, records, cam.viewport);
    for (const auto& r : records) {
        std::cerr << "# P=" << r.workers << " sort fraction " << r.sortTimeMs / r.frameTimeMs << '\n';
    }
    return 0;
}

int run_serve(const cli::SceneOptions& scene, std::uint32_t workers, const std::string& address,
              std::uint16_t port) {
    Dataset dataset = cli::build_dataset(scene);
    const Camera cam = cli::build_camera(scene, dataset);
    const MappingSpec spec = cli::build_mapping(scene);
    runtime::Engine engine(std::move(dataset), cam, spec, {workers, cli::build_render_settings(scene)});
    runtime::serve_frames(engine, {address, port});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth-stylized parallel tube renderer"};
    app.require_subcommand(1);

    cli::SceneOptions renderScene;
    std::uint32_t renderWorkers = 1;
    std::string out = "frame.ppm";
    std::string depthOut;
    auto* render = app.add_subcommand("render", "Render one frame to a PPM image");
    cli::add_scene_options(*render, renderScene);
    render->add_option("--workers", renderWorkers, "Worker count")->check(CLI::Range(1u, 1024u))->capture_default_str();
    render->add_option("--out", out, "Output PPM path")->capture_default_str();
    render->add_option("--depth-out", depthOut, "Optional DPTH depth dump path");

    cli::SceneOptions benchScene;
    std::string benchWorkers = "1,2,3,4";
    std::uint32_t frames = 100;
    double step = 2.0;
    auto* bench = app.add_subcommand("bench", "Time frames across worker counts; TSV table on stdout");
    cli::add_scene_options(*bench, benchScene);
    bench->add_option("--workers", benchWorkers, "Comma-separated worker counts")->capture_default_str();
    bench->add_option("--frames", frames, "Frames per worker count")->check(CLI::PositiveNumber)->capture_default_str();
    bench->add_option("--step", step, "Azimuth step per frame in degrees")->capture_default_str();

    cli::SceneOptions serveScene;
    std::uint32_t serveWorkers = 1;
    std::string address = "127.0.0.1";
    std::uint16_t port = 8080;
    auto* serve = app.add_subcommand("serve", "Stream frames over WebSocket");
    cli::add_scene_options(*serve, serveScene);
    serve->add_option("--workers", serveWorkers, "Worker count")->check(CLI::Range(1u, 1024u))->capture_default_str();
    serve->add_option("--address", address, "Listen address")->capture_default_str();
    serve->add_option("--port", port, "Listen port")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*render) {
            return run_render(renderScene, renderWorkers, out, depthOut);
        }
        if (*bench) {
            return run_bench(benchScene, benchWorkers, frames, step);
        }
        if (*serve) {
            return run_serve(serveScene, serveWorkers, address, port);
        }
    } catch (const std::exception& e) {
        std::cerr << "tubestyle: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
