#include "tubestyle/runtime/engine.hpp"

#include <chrono>
#include <iostream>

#include "tubestyle/compositor.hpp"

namespace tubestyle::runtime {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<Polyline> slice(const Dataset& ds, const Partition& p) {
    return {ds.polylines.begin() + static_cast<std::ptrdiff_t>(p.sidx),
            ds.polylines.begin() + static_cast<std::ptrdiff_t>(p.eidx)};
}

}  // namespace

Engine::Engine(Dataset dataset, Camera camera, MappingSpec spec, EngineConfig config)
    : dataset_(std::move(dataset)), camera_(camera), spec_(spec), config_(config) {
    validate(camera_);
    validate(spec_);
    if (config_.workers < 1 || config_.workers >= kNoProvenance) {
        throw std::invalid_argument("worker count must lie in [1, 65534]");
    }
    if (config_.render.tubeSides < 3) {
        throw std::invalid_argument("tube sides must be >= 3");
    }
    if (dataset_.totalVertices * config_.render.tubeSides >= 0xFFFFFFFFull) {
        throw std::invalid_argument("dataset too large for 32-bit mesh vertex ids");
    }
    partitions_ = partition_dataset(dataset_, config_.workers);
    std::size_t empty = 0;
    for (const auto& p : partitions_) {
        empty += p.size() == 0 ? 1 : 0;
    }
    if (empty > 0) {
        std::clog << "tubestyle: " << empty << " of " << config_.workers << " workers received no polylines ("
                  << dataset_.polylines.size() << " polylines)\n";
    }

    master_ = std::make_unique<PartitionRenderer>(partitions_[0], slice(dataset_, partitions_[0]),
                                                  dataset_.totalVertices, config_.render);
    workerMeshBuilds_.assign(config_.workers, 0);
    for (std::uint32_t w = 1; w < config_.workers; ++w) {
        renderers_.push_back(std::make_unique<PartitionRenderer>(partitions_[w], slice(dataset_, partitions_[w]),
                                                                 dataset_.totalVertices, config_.render));
        outboxes_.push_back(std::make_unique<ByteChannel>());
        outboxPtrs_.push_back(outboxes_.back().get());
    }
    for (std::uint32_t w = 1; w < config_.workers; ++w) {
        threads_.emplace_back(worker_loop, std::ref(*renderers_[w - 1]), static_cast<std::uint16_t>(w),
                              std::ref(*outboxes_[w - 1]), std::ref(inbox_));
    }
}

Engine::~Engine() {
    const SharedBytes bye = share(encode_shutdown());
    for (auto* out : outboxPtrs_) {
        out->push(bye);
    }
    for (auto& t : threads_) {
        t.join();
    }
}

void Engine::broadcast(const SharedBytes& frame) {
    for (auto* out : outboxPtrs_) {
        out->push(frame);
    }
}

std::uint32_t Engine::run_sort_round(SortPass pass, std::vector<DepthCell>& cells, double& sortMs) {
    const auto start = Clock::now();
    if (pass == SortPass::Polyline) {
        master_->polyline_depth_cells(cells);
    } else {
        master_->mesh_depth_cells(cells);
    }
    exchange_[static_cast<int>(pass)].run(static_cast<std::uint8_t>(pass), cells, inbox_, outboxPtrs_);
    sortMs += ms_since(start);
    return 1;
}

FrameResult Engine::render_frame() {
    if (broken_) {
        throw FrameError("engine stopped after an earlier worker failure");
    }
    const auto start = Clock::now();
    FrameStats stats;
    stats.frameId = ++frameCounter_;
    stats.workers = config_.workers;

    try {
        broadcast(share(encode_camera_sync(camera_)));
        if (mappingDirty_) {
            broadcast(share(encode_mapping_update(spec_)));
            master_->set_mapping(spec_);
            mappingDirty_ = false;
        }
        broadcast(share(encode_render_frame(stats.frameId)));
        master_->set_camera(camera_);

        std::vector<DepthCell> cells;
        if (spec_.enabled.has(VisualVariable::Size)) {
            stats.sortRounds += run_sort_round(SortPass::Polyline, cells, stats.sortMs);
            master_->build_sized_tubes(exchange_[0].index());
        } else {
            master_->ensure_uniform_tubes();
        }
        const HashIndex* meshIndex = nullptr;
        if (needs_mesh_ranks(spec_)) {
            stats.sortRounds += run_sort_round(SortPass::Mesh, cells, stats.sortMs);
            meshIndex = &exchange_[1].index();
        }
        FrameTile image = master_->render(meshIndex, 0);
        workerMeshBuilds_[0] = master_->mesh_builds();

        for (std::size_t pending = outboxPtrs_.size(); pending > 0; --pending) {
            const SharedBytes frame = inbox_.pop();
            const MessageView msg = view_frame(*frame);
            if (msg.kind == MessageKind::WorkerFailure) {
                const WorkerFailure failure = decode_worker_failure(msg.payload);
                throw FrameError("worker " + std::to_string(failure.workerId) + " failed: " + failure.diagnostic);
            }
            if (msg.kind != MessageKind::TileUpload) {
                throw WireError(std::string("expected TileUpload, got ") + to_string(msg.kind));
            }
            const TileUpload upload = decode_tile_upload(msg.payload);
            if (upload.workerId < workerMeshBuilds_.size()) {
                workerMeshBuilds_[upload.workerId] = upload.meshBuilds;
            }
            composite_pair(image, upload.tile);
        }

        stats.frameMs = ms_since(start);
        for (auto builds : workerMeshBuilds_) {
            stats.meshBuilds += builds;
        }
        totalSortRounds_ += stats.sortRounds;
        return {std::move(image), stats};
    } catch (const FrameError&) {
        broken_ = true;
        throw;
    } catch (const std::exception& e) {
        broken_ = true;
        throw FrameError(std::string("frame aborted: ") + e.what());
    }
}

void Engine::rotate(double dxNdc, double dyNdc) {
    camera_ = trackball_rotate(camera_, dxNdc, dyNdc);
    mappingDirty_ = true;
}

FrameResult Engine::handle_interaction(double dxNdc, double dyNdc) {
    rotate(dxNdc, dyNdc);
    return render_frame();
}

void Engine::set_camera(const Camera& cam) {
    validate(cam);
    camera_ = cam;
}

void Engine::set_mapping(const MappingSpec& spec) {
    validate(spec);
    spec_ = spec;
    mappingDirty_ = true;
}

void Engine::resize(std::uint32_t width, std::uint32_t height) {
    Camera cam = camera_;
    cam.viewport = {width, height};
    set_camera(cam);
}

const HashIndex& Engine::last_index(SortPass pass) const { return exchange_[static_cast<int>(pass)].index(); }

}  // namespace tubestyle::runtime
