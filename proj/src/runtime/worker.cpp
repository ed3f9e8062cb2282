#include "tubestyle/runtime/worker.hpp"

#include "tubestyle/kernels.hpp"

namespace tubestyle::runtime {

PartitionRenderer::PartitionRenderer(Partition partition, std::vector<Polyline> polylines,
                                     std::size_t totalPolylineVertices, RenderSettings settings)
    : partition_(partition),
      polylines_(std::move(polylines)),
      totalPolylineVertices_(totalPolylineVertices),
      settings_(settings) {}

void PartitionRenderer::set_mapping(const MappingSpec& spec) {
    if (spec.radius.mid() != spec_.radius.mid()) {
        uniformValid_ = false;
    }
    spec_ = spec;
}

void PartitionRenderer::polyline_depth_cells(std::vector<DepthCell>& out) const {
    out.clear();
    out.reserve(partition_.vertexCount);
    const Vec3 dir = view_direction(camera_);
    auto id = static_cast<std::uint32_t>(partition_.vertexIdOffset);
    for (const auto& line : polylines_) {
        for (const auto& v : line.vertices) {
            out.push_back({static_cast<float>(vertex_depth(camera_, v, dir)), id++});
        }
    }
    local_depth_sort_in_place(out);
}

void PartitionRenderer::build_tubes(const std::vector<double>* radii) {
    meshes_.resize(polylines_.size());
    std::size_t cursor = 0;
    auto globalVertex = static_cast<std::uint32_t>(partition_.vertexIdOffset);
    std::vector<double> uniform;
    for (std::size_t i = 0; i < polylines_.size(); ++i) {
        const std::size_t n = polylines_[i].vertices.size();
        std::span<const double> r;
        if (radii != nullptr) {
            r = std::span<const double>(*radii).subspan(cursor, n);
        } else {
            uniform.assign(n, spec_.radius.mid());
            r = uniform;
        }
        meshes_[i] = tessellate_tube(polylines_[i], r, settings_.tubeSides, globalVertex);
        cursor += n;
        globalVertex += static_cast<std::uint32_t>(n);
    }
    ++meshBuilds_;
}

void PartitionRenderer::build_sized_tubes(const HashIndex& polylineIndex) {
    const auto ranks = global_rank_span(polylineIndex, partition_.vertexIdOffset, partition_.vertexCount);
    const std::uint64_t rankMax = polylineIndex.size() - 1;
    const std::vector<double> radii = radii_for_polylines(ranks, rankMax, spec_);
    build_tubes(&radii);
    uniformValid_ = false;
}

void PartitionRenderer::ensure_uniform_tubes() {
    if (uniformValid_ && uniformRadius_ == spec_.radius.mid()) {
        return;
    }
    build_tubes(nullptr);
    uniformValid_ = true;
    uniformRadius_ = spec_.radius.mid();
}

void PartitionRenderer::mesh_depth_cells(std::vector<DepthCell>& out) const {
    out.clear();
    out.reserve(partition_.vertexCount * settings_.tubeSides);
    const Vec3 dir = view_direction(camera_);
    auto id = static_cast<std::uint32_t>(mesh_vertex_offset());
    for (const auto& mesh : meshes_) {
        for (const auto& p : mesh.positions) {
            out.push_back({static_cast<float>(vertex_depth(camera_, p, dir)), id++});
        }
    }
    local_depth_sort_in_place(out);
}

FrameTile PartitionRenderer::render(const HashIndex* meshIndex, std::uint16_t workerId) const {
    FrameTile tile(camera_.viewport.width, camera_.viewport.height, settings_.background);
    const std::uint64_t rankMax = total_mesh_vertices() == 0 ? 0 : total_mesh_vertices() - 1;
    std::vector<VertexStyle> styles;
    std::size_t meshId = mesh_vertex_offset();
    for (const auto& mesh : meshes_) {
        styles.resize(mesh.vertex_count());
        if (meshIndex != nullptr) {
            const auto ranks = global_rank_span(*meshIndex, meshId, mesh.vertex_count());
            for (std::size_t i = 0; i < styles.size(); ++i) {
                styles[i] = style_vertex(ranks[i], rankMax, spec_, settings_.baseColor);
            }
        } else {
            const VertexStyle uniform = style_vertex(0, 0, spec_, settings_.baseColor);
            std::fill(styles.begin(), styles.end(), uniform);
        }
        rasterize_mesh(tile, mesh, styles, camera_, workerId);
        meshId += mesh.vertex_count();
    }
    return tile;
}

std::uint32_t worker_frame(PartitionRenderer& renderer, std::uint16_t workerId, ByteChannel& inbox,
                           ByteChannel& toMaster) {
    std::uint32_t rounds = 0;
    std::vector<DepthCell> cells;
    if (renderer.mapping().enabled.has(VisualVariable::Size)) {
        renderer.polyline_depth_cells(cells);
        const HashIndex index =
            worker_sort_exchange(static_cast<std::uint8_t>(SortPass::Polyline), workerId, cells, inbox, toMaster);
        renderer.build_sized_tubes(index);
        ++rounds;
    } else {
        renderer.ensure_uniform_tubes();
    }
    FrameTile tile;
    if (needs_mesh_ranks(renderer.mapping())) {
        renderer.mesh_depth_cells(cells);
        const HashIndex index =
            worker_sort_exchange(static_cast<std::uint8_t>(SortPass::Mesh), workerId, cells, inbox, toMaster);
        ++rounds;
        tile = renderer.render(&index, workerId);
    } else {
        tile = renderer.render(nullptr, workerId);
    }
    toMaster.push(share(encode_tile_upload(workerId, renderer.mesh_builds(), tile)));
    return rounds;
}

void worker_loop(PartitionRenderer& renderer, std::uint16_t workerId, ByteChannel& inbox, ByteChannel& toMaster) {
    for (;;) {
        const SharedBytes frame = inbox.pop();
        try {
            const MessageView msg = view_frame(*frame);
            switch (msg.kind) {
                case MessageKind::Shutdown:
                    return;
                case MessageKind::CameraSync:
                    renderer.set_camera(decode_camera_sync(msg.payload));
                    break;
                case MessageKind::MappingUpdate:
                    renderer.set_mapping(decode_mapping_update(msg.payload));
                    break;
                case MessageKind::RenderFrame:
                    decode_render_frame(msg.payload);
                    worker_frame(renderer, workerId, inbox, toMaster);
                    break;
                default:
                    throw WireError(std::string("worker cannot handle ") + to_string(msg.kind));
            }
        } catch (const ShutdownRequested&) {
            return;
        } catch (const std::exception& e) {
            toMaster.push(share(encode_worker_failure({workerId, e.what()})));
        }
    }
}

}  // namespace tubestyle::runtime
