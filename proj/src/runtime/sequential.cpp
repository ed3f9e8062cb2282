#include "tubestyle/runtime/sequential.hpp"

#include "tubestyle/kernels.hpp"
#include "tubestyle/tubegen.hpp"

namespace tubestyle::runtime {

SequentialResult render_sequential(const Dataset& dataset, const Camera& cam, const MappingSpec& spec,
                                   const RenderSettings& settings) {
    validate(cam);
    validate(spec);
    SequentialResult result;
    const std::uint32_t sides = settings.tubeSides;

    std::vector<double> radii(dataset.totalVertices, spec.radius.mid());
    if (spec.enabled.has(VisualVariable::Size)) {
        std::vector<Vec3> points;
        points.reserve(dataset.totalVertices);
        for (const auto& line : dataset.polylines) {
            points.insert(points.end(), line.vertices.begin(), line.vertices.end());
        }
        std::vector<DepthCell> cells;
        kernels::depth_cells_serial(cam, points, 0, cells);
        local_depth_sort_in_place(cells);
        kernels::hash_index_serial(cells, result.polylineIndex);
        radii = radii_for_polylines(result.polylineIndex.ranks, dataset.totalVertices - 1, spec);
        ++result.sortRounds;
    }

    std::vector<TubeMesh> meshes;
    meshes.reserve(dataset.polylines.size());
    std::size_t cursor = 0;
    for (const auto& line : dataset.polylines) {
        const std::size_t n = line.vertices.size();
        meshes.push_back(tessellate_tube(line, std::span<const double>(radii).subspan(cursor, n), sides,
                                         static_cast<std::uint32_t>(cursor)));
        cursor += n;
    }

    const std::size_t totalMesh = dataset.totalVertices * sides;
    if (needs_mesh_ranks(spec)) {
        std::vector<Vec3> points;
        points.reserve(totalMesh);
        for (const auto& m : meshes) {
            points.insert(points.end(), m.positions.begin(), m.positions.end());
        }
        std::vector<DepthCell> cells;
        kernels::depth_cells_serial(cam, points, 0, cells);
        local_depth_sort_in_place(cells);
        kernels::hash_index_serial(cells, result.meshIndex);
        ++result.sortRounds;
    }

    result.image = FrameTile(cam.viewport.width, cam.viewport.height, settings.background);
    std::vector<VertexStyle> styles;
    std::size_t meshId = 0;
    for (const auto& m : meshes) {
        styles.resize(m.vertex_count());
        for (std::size_t i = 0; i < styles.size(); ++i) {
            styles[i] = result.meshIndex.size() > 0
                            ? style_vertex(result.meshIndex.ranks[meshId + i], totalMesh - 1, spec, settings.baseColor)
                            : style_vertex(0, 0, spec, settings.baseColor);
        }
        rasterize_mesh(result.image, m, styles, cam, 0);
        meshId += m.vertex_count();
    }
    return result;
}

}  // namespace tubestyle::runtime
