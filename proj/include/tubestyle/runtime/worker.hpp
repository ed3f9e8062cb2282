#pragma once

#include <cstdint>
#include <vector>

#include "tubestyle/camera.hpp"
#include "tubestyle/raster.hpp"
#include "tubestyle/ranksort.hpp"
#include "tubestyle/runtime/partition.hpp"
#include "tubestyle/runtime/sort_round.hpp"
#include "tubestyle/stylemap.hpp"
#include "tubestyle/tubegen.hpp"

namespace tubestyle::runtime {

// Pass identifiers carried in the round byte of sort messages.
enum class SortPass : std::uint8_t { Polyline = 0, Mesh = 1 };

struct RenderSettings {
    std::uint32_t tubeSides = kDefaultTubeSides;
    Rgba8 background{0, 0, 0, 255};
    Rgb baseColor{0.85, 0.85, 0.85};
};

// Everything one execution context does to its own partition within a frame.
// Holds a private copy of the partition's polylines and the tubes built from them.
class PartitionRenderer {
public:
    PartitionRenderer(Partition partition, std::vector<Polyline> polylines, std::size_t totalPolylineVertices,
                      RenderSettings settings);

    void set_camera(const Camera& cam) { camera_ = cam; }
    void set_mapping(const MappingSpec& spec);
    const Camera& camera() const { return camera_; }
    const MappingSpec& mapping() const { return spec_; }
    const Partition& partition() const { return partition_; }

    // Pass 1 input: polyline-vertex depth cells, locally sorted.
    void polyline_depth_cells(std::vector<DepthCell>& out) const;
    // Rebuilds tubes with radii mapped from the global polyline ranks.
    void build_sized_tubes(const HashIndex& polylineIndex);
    // Builds uniform-radius tubes unless the cached ones still match.
    void ensure_uniform_tubes();

    // Pass 2 input: tube-mesh-vertex depth cells, locally sorted.
    void mesh_depth_cells(std::vector<DepthCell>& out) const;
    // meshIndex may be null when no mesh-rank variable is enabled.
    FrameTile render(const HashIndex* meshIndex, std::uint16_t workerId) const;

    std::uint32_t mesh_builds() const { return meshBuilds_; }
    std::size_t mesh_vertex_offset() const { return partition_.vertexIdOffset * settings_.tubeSides; }
    std::size_t total_mesh_vertices() const { return totalPolylineVertices_ * settings_.tubeSides; }
    const std::vector<TubeMesh>& meshes() const { return meshes_; }

private:
    void build_tubes(const std::vector<double>* radii);

    Partition partition_;
    std::vector<Polyline> polylines_;
    std::size_t totalPolylineVertices_;
    RenderSettings settings_;
    Camera camera_;
    MappingSpec spec_;

    std::vector<TubeMesh> meshes_;
    bool uniformValid_ = false;
    double uniformRadius_ = 0.0;
    std::uint32_t meshBuilds_ = 0;
};

// Runs one full frame for a non-master partition: the sort exchanges the
// mapping needs, rasterization, tile upload. Returns the number of sort rounds.
std::uint32_t worker_frame(PartitionRenderer& renderer, std::uint16_t workerId, ByteChannel& inbox,
                           ByteChannel& toMaster);

// Message loop of a worker context; returns after Shutdown. Errors are reported
// to the master as WorkerFailure and the loop keeps serving.
void worker_loop(PartitionRenderer& renderer, std::uint16_t workerId, ByteChannel& inbox, ByteChannel& toMaster);

}  // namespace tubestyle::runtime
