#include "tubestyle/ranksort.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tubestyle {
namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

void require_sorted(std::span<const DepthCell> cells, const char* which) {
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (depth_less(cells[i], cells[i - 1])) {
            throw SortError(std::string(which) + " input is not sorted at position " + std::to_string(i));
        }
    }
}

}  // namespace

bool is_depth_sorted(std::span<const DepthCell> cells) {
    return std::is_sorted(cells.begin(), cells.end(), depth_less);
}

void local_depth_sort_in_place(std::vector<DepthCell>& cells) {
    for (const auto& c : cells) {
        if (!std::isfinite(c.vd)) {
            throw SortError("non-finite depth for vertex " + std::to_string(c.id));
        }
    }
    std::sort(cells.begin(), cells.end(), depth_less);
}

std::vector<DepthCell> local_depth_sort(std::vector<DepthCell> cells) {
    local_depth_sort_in_place(cells);
    return cells;
}

std::vector<DepthCell> twoway_merge(std::span<const DepthCell> acc, std::span<const DepthCell> incoming) {
    require_sorted(acc, "accumulated");
    require_sorted(incoming, "incoming");
    std::vector<DepthCell> out(acc.size() + incoming.size());
    std::merge(acc.begin(), acc.end(), incoming.begin(), incoming.end(), out.begin(), depth_less);
    return out;
}

void RankMerger::reset() {
    acc_.clear();
    merges_ = 0;
}

void RankMerger::merge(std::span<const DepthCell> incoming) {
    require_sorted(incoming, "incoming");
    scratch_.resize(acc_.size() + incoming.size());
    std::merge(acc_.begin(), acc_.end(), incoming.begin(), incoming.end(), scratch_.begin(), depth_less);
    std::swap(acc_, scratch_);
    ++merges_;
}

void build_hash_index(std::span<const DepthCell> merged, HashIndex& out) {
    const std::size_t n = merged.size();
    out.ranks.assign(n, kUnassigned);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t id = merged[i].id;
        if (id >= n) {
            throw SortError("vertex id " + std::to_string(id) + " out of range for " + std::to_string(n) + " cells");
        }
        if (out.ranks[id] != kUnassigned) {
            throw SortError("duplicate vertex id " + std::to_string(id));
        }
        out.ranks[id] = static_cast<std::uint32_t>(i);
    }
}

HashIndex build_hash_index(std::span<const DepthCell> merged) {
    HashIndex index;
    build_hash_index(merged, index);
    return index;
}

std::span<const std::uint32_t> global_rank_span(const HashIndex& index, std::size_t idOffset, std::size_t count) {
    if (idOffset > index.size() || count > index.size() - idOffset) {
        throw std::out_of_range("rank lookup [" + std::to_string(idOffset) + ", " + std::to_string(idOffset + count) +
                                ") exceeds index of " + std::to_string(index.size()));
    }
    return std::span<const std::uint32_t>(index.ranks).subspan(idOffset, count);
}

std::vector<std::uint32_t> lookup_global_ranks(const HashIndex& index, std::size_t idOffset, std::size_t count) {
    const auto ranks = global_rank_span(index, idOffset, count);
    return {ranks.begin(), ranks.end()};
}

bool is_permutation_index(const HashIndex& index) {
    std::vector<bool> seen(index.size(), false);
    for (const auto r : index.ranks) {
        if (r >= index.size() || seen[r]) {
            return false;
        }
        seen[r] = true;
    }
    return true;
}

}  // namespace tubestyle
