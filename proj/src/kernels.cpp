#include "tubestyle/kernels.hpp"

#include <atomic>
#include <limits>
#include <string>

#include "tubestyle/compositor.hpp"

namespace tubestyle::kernels {
namespace {

void check_dims(const FrameTile& a, const FrameTile& b) {
    if (a.width != b.width || a.height != b.height) {
        throw CompositeError("tile size mismatch: " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                             " vs " + std::to_string(b.width) + "x" + std::to_string(b.height));
    }
}

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

}  // namespace

void composite_pair_serial(FrameTile& acc, const FrameTile& incoming) {
    check_dims(acc, incoming);
    const std::size_t n = acc.pixel_count();
    for (std::size_t i = 0; i < n; ++i) {
        if (fragment_wins(incoming.depth[i], incoming.provenance[i], incoming.color[i], acc.depth[i],
                          acc.provenance[i], acc.color[i])) {
            acc.depth[i] = incoming.depth[i];
            acc.provenance[i] = incoming.provenance[i];
            acc.color[i] = incoming.color[i];
        }
    }
}

void composite_pair_omp(FrameTile& acc, const FrameTile& incoming) {
    check_dims(acc, incoming);
    const auto n = static_cast<std::int64_t>(acc.pixel_count());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        if (fragment_wins(incoming.depth[i], incoming.provenance[i], incoming.color[i], acc.depth[i],
                          acc.provenance[i], acc.color[i])) {
            acc.depth[i] = incoming.depth[i];
            acc.provenance[i] = incoming.provenance[i];
            acc.color[i] = incoming.color[i];
        }
    }
}

void depth_cells_serial(const Camera& cam, std::span<const Vec3> positions, std::uint32_t idOffset,
                        std::vector<DepthCell>& cells) {
    const Vec3 dir = view_direction(cam);
    cells.resize(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        cells[i] = {static_cast<float>(vertex_depth(cam, positions[i], dir)), idOffset + static_cast<std::uint32_t>(i)};
    }
}

void depth_cells_omp(const Camera& cam, std::span<const Vec3> positions, std::uint32_t idOffset,
                     std::vector<DepthCell>& cells) {
    const Vec3 dir = view_direction(cam);
    cells.resize(positions.size());
    const auto n = static_cast<std::int64_t>(positions.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        cells[i] = {static_cast<float>(vertex_depth(cam, positions[i], dir)), idOffset + static_cast<std::uint32_t>(i)};
    }
}

void hash_index_serial(std::span<const DepthCell> merged, HashIndex& out) { build_hash_index(merged, out); }

void hash_index_omp(std::span<const DepthCell> merged, HashIndex& out) {
    const auto n = static_cast<std::int64_t>(merged.size());
    out.ranks.resize(merged.size());
    bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (std::int64_t i = 0; i < n; ++i) {
        const std::uint32_t id = merged[i].id;
        if (id >= static_cast<std::uint64_t>(n)) {
            bad = true;
            continue;
        }
        std::atomic_ref<std::uint32_t>(out.ranks[id]).store(static_cast<std::uint32_t>(i), std::memory_order_relaxed);
    }
    // n in-range ids that all read back their own rank are distinct, so the
    // scatter covered every slot. A duplicate id loses one of its writes here.
    if (!bad) {
#pragma omp parallel for schedule(static) reduction(|| : bad)
        for (std::int64_t i = 0; i < n; ++i) {
            bad = bad || out.ranks[merged[i].id] != static_cast<std::uint32_t>(i);
        }
    }
    if (bad) {
        // Rerun serially for the precise diagnostic.
        build_hash_index(merged, out);
    }
}

}  // namespace tubestyle::kernels
