#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tubestyle {

// One sortable unit: a view depth and the original global vertex index.
struct DepthCell {
    float vd = 0.0f;
    std::uint32_t id = 0;

    bool operator==(const DepthCell&) const = default;
};

// Total order used everywhere: depth first, ties by ascending id.
constexpr bool depth_less(const DepthCell& a, const DepthCell& b) {
    return a.vd < b.vd || (a.vd == b.vd && a.id < b.id);
}

struct LocalDepthArray {
    std::vector<DepthCell> cells;
    std::uint32_t idOffset = 0;
    std::uint32_t workerId = 0;
};

class SortError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_depth_sorted(std::span<const DepthCell> cells);

// Sorts by (vd, id). Throws SortError on a non-finite depth.
std::vector<DepthCell> local_depth_sort(std::vector<DepthCell> cells);
void local_depth_sort_in_place(std::vector<DepthCell>& cells);

// Merges two (vd, id)-sorted runs. Throws SortError if either input is out of order.
std::vector<DepthCell> twoway_merge(std::span<const DepthCell> acc, std::span<const DepthCell> incoming);

// Master-side accumulator for iterative two-way merging. Buffers keep their
// capacity across frames, so steady-state frames do not allocate.
class RankMerger {
public:
    void reset();
    void merge(std::span<const DepthCell> incoming);
    const std::vector<DepthCell>& merged() const { return acc_; }
    std::size_t merges() const { return merges_; }

private:
    std::vector<DepthCell> acc_;
    std::vector<DepthCell> scratch_;
    std::size_t merges_ = 0;
};

// ranks[id] = global depth rank of vertex id.
struct HashIndex {
    std::vector<std::uint32_t> ranks;

    std::size_t size() const { return ranks.size(); }
    bool operator==(const HashIndex&) const = default;
};

// Throws SortError on an out-of-range or duplicate id.
HashIndex build_hash_index(std::span<const DepthCell> merged);
void build_hash_index(std::span<const DepthCell> merged, HashIndex& out);

// Throws std::out_of_range when idOffset + count exceeds the index.
std::span<const std::uint32_t> global_rank_span(const HashIndex& index, std::size_t idOffset, std::size_t count);
std::vector<std::uint32_t> lookup_global_ranks(const HashIndex& index, std::size_t idOffset, std::size_t count);

bool is_permutation_index(const HashIndex& index);

}  // namespace tubestyle
