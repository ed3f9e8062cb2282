#include "tubestyle/compositor.hpp"

#include <algorithm>

#include "tubestyle/kernels.hpp"

namespace tubestyle {

void composite_pair(FrameTile& acc, const FrameTile& incoming) { kernels::composite_pair_omp(acc, incoming); }

FrameTile composited(const FrameTile& acc, const FrameTile& incoming) {
    FrameTile out = acc;
    composite_pair(out, incoming);
    return out;
}

FrameTile composite_all(std::span<const FrameTile> tiles, std::span<const std::size_t> arrivalOrder) {
    if (tiles.empty()) {
        throw CompositeError("composite_all needs at least one tile");
    }
    std::vector<std::size_t> order(arrivalOrder.begin(), arrivalOrder.end());
    if (order.empty()) {
        order.resize(tiles.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            order[i] = i;
        }
    }
    std::vector<std::size_t> check = order;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i) {
        if (check.size() != tiles.size() || check[i] != i) {
            throw CompositeError("arrival order is not a permutation of the tile indices");
        }
    }
    FrameTile acc = tiles[order.front()];
    for (std::size_t k = 1; k < order.size(); ++k) {
        composite_pair(acc, tiles[order[k]]);
    }
    return acc;
}

}  // namespace tubestyle
