#pragma once

#include <cstdint>
#include <memory>
#include <thread>
#include <vector>

#include "tubestyle/camera.hpp"
#include "tubestyle/geometry.hpp"
#include "tubestyle/raster.hpp"
#include "tubestyle/ranksort.hpp"
#include "tubestyle/runtime/partition.hpp"
#include "tubestyle/runtime/sort_round.hpp"
#include "tubestyle/runtime/worker.hpp"
#include "tubestyle/stylemap.hpp"

namespace tubestyle::runtime {

struct EngineConfig {
    std::uint32_t workers = 1;
    RenderSettings render;
};

struct FrameStats {
    std::uint32_t frameId = 0;
    double frameMs = 0.0;
    double sortMs = 0.0;
    std::uint32_t sortRounds = 0;
    std::uint32_t workers = 1;
    std::uint64_t meshBuilds = 0;  // cumulative, summed over all contexts
};

struct FrameResult {
    FrameTile image;
    FrameStats stats;
};

// Master context plus workers-1 worker threads. The master renders partition 0
// itself; all other contexts only talk to it through byte channels.
class Engine {
public:
    Engine(Dataset dataset, Camera camera, MappingSpec spec, EngineConfig config);
    ~Engine();

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    // Throws FrameError if any context fails; the engine is unusable afterwards.
    FrameResult render_frame();

    // Trackball rotation followed by a mapping refresh and a new frame.
    FrameResult handle_interaction(double dxNdc, double dyNdc);
    // The state change of handle_interaction without rendering; lets callers
    // fold several events into one frame.
    void rotate(double dxNdc, double dyNdc);

    void set_camera(const Camera& cam);
    void set_mapping(const MappingSpec& spec);
    void resize(std::uint32_t width, std::uint32_t height);

    const Camera& camera() const { return camera_; }
    const MappingSpec& mapping() const { return spec_; }
    const Dataset& dataset() const { return dataset_; }
    const std::vector<Partition>& partitions() const { return partitions_; }
    std::uint32_t workers() const { return config_.workers; }

    // Hash index produced by the most recent frame's sort cycle for the pass.
    const HashIndex& last_index(SortPass pass) const;
    std::uint64_t total_sort_rounds() const { return totalSortRounds_; }
    std::uint32_t frames_rendered() const { return frameCounter_; }

private:
    void broadcast(const SharedBytes& frame);
    std::uint32_t run_sort_round(SortPass pass, std::vector<DepthCell>& cells, double& sortMs);

    Dataset dataset_;
    Camera camera_;
    MappingSpec spec_;
    EngineConfig config_;
    std::vector<Partition> partitions_;

    std::unique_ptr<PartitionRenderer> master_;
    std::vector<std::unique_ptr<PartitionRenderer>> renderers_;
    std::vector<std::unique_ptr<ByteChannel>> outboxes_;
    std::vector<ByteChannel*> outboxPtrs_;
    ByteChannel inbox_;
    std::vector<std::thread> threads_;

    MasterSortExchange exchange_[2];
    bool mappingDirty_ = true;
    bool broken_ = false;
    std::uint32_t frameCounter_ = 0;
    std::uint64_t totalSortRounds_ = 0;
    std::vector<std::uint32_t> workerMeshBuilds_;
};

}  // namespace tubestyle::runtime
