#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tubestyle/ranksort.hpp"

using namespace tubestyle;

namespace {

// Quadratic counting oracle: the rank of cell i is the number of cells that
// precede it under (vd, id).
std::vector<std::uint32_t> counting_ranks(const std::vector<DepthCell>& cells) {
    std::vector<std::uint32_t> ranks(cells.size());
    for (const auto& c : cells) {
        std::uint32_t r = 0;
        for (const auto& o : cells) {
            r += depth_less(o, c) ? 1 : 0;
        }
        ranks[c.id] = r;
    }
    return ranks;
}

std::vector<DepthCell> random_cells(std::mt19937_64& rng, std::size_t n, int distinctDepths) {
    std::uniform_int_distribution<int> pick(0, distinctDepths - 1);
    std::vector<DepthCell> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
        cells[i] = {static_cast<float>(pick(rng)) * 0.25f - 3.0f, static_cast<std::uint32_t>(i)};
    }
    return cells;
}

}  // namespace

TEST_CASE("local sort examples") {
    CHECK(local_depth_sort({{3.0f, 7}, {1.0f, 8}, {2.0f, 9}}) ==
          std::vector<DepthCell>{{1.0f, 8}, {2.0f, 9}, {3.0f, 7}});
    CHECK(local_depth_sort({{1.0f, 5}, {1.0f, 2}}) == std::vector<DepthCell>{{1.0f, 2}, {1.0f, 5}});
    CHECK(local_depth_sort({}).empty());
    CHECK_THROWS_AS(local_depth_sort({{std::numeric_limits<float>::quiet_NaN(), 0}}), SortError);
    CHECK_THROWS_AS(local_depth_sort({{1.0f, 0}, {std::numeric_limits<float>::infinity(), 1}}), SortError);
}

TEST_CASE("two-way merge examples") {
    CHECK(twoway_merge(std::vector<DepthCell>{{1, 0}, {4, 1}}, std::vector<DepthCell>{{2, 2}, {3, 3}}) ==
          std::vector<DepthCell>{{1, 0}, {2, 2}, {3, 3}, {4, 1}});
    CHECK(twoway_merge({}, std::vector<DepthCell>{{5, 9}}) == std::vector<DepthCell>{{5, 9}});
    CHECK(twoway_merge(std::vector<DepthCell>{{1, 3}}, std::vector<DepthCell>{{1, 1}}) ==
          std::vector<DepthCell>{{1, 1}, {1, 3}});
    CHECK_THROWS_AS(twoway_merge(std::vector<DepthCell>{{2, 0}, {1, 1}}, {}), SortError);
    CHECK_THROWS_AS(twoway_merge({}, std::vector<DepthCell>{{1, 2}, {1, 1}}), SortError);
}

TEST_CASE("hash index examples") {
    CHECK(build_hash_index(std::vector<DepthCell>{{0.5f, 2}, {0.7f, 0}, {0.9f, 1}}).ranks ==
          std::vector<std::uint32_t>{1, 2, 0});
    CHECK(build_hash_index(std::vector<DepthCell>{{1, 0}}).ranks == std::vector<std::uint32_t>{0});
    CHECK_THROWS_AS(build_hash_index(std::vector<DepthCell>{{1, 0}, {2, 0}}), SortError);
    CHECK_THROWS_AS(build_hash_index(std::vector<DepthCell>{{1, 0}, {2, 5}}), SortError);
}

TEST_CASE("rank lookup examples") {
    const HashIndex idx{{4, 0, 3, 1, 2}};
    CHECK(lookup_global_ranks(idx, 2, 2) == std::vector<std::uint32_t>{3, 1});
    CHECK(lookup_global_ranks(idx, 0, 5) == idx.ranks);
    CHECK(lookup_global_ranks(idx, 5, 0).empty());
    CHECK_THROWS_AS(lookup_global_ranks(idx, 4, 2), std::out_of_range);
    CHECK(is_permutation_index(idx));
    CHECK_FALSE(is_permutation_index(HashIndex{{0, 0}}));
}

TEST_CASE("distributed ranking equals the counting oracle") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 300;
        const std::vector<DepthCell> all = random_cells(rng, n, 1 + static_cast<int>(rng() % 20));
        const std::size_t parts = 1 + rng() % 6;

        std::vector<std::vector<DepthCell>> uploads;
        const std::size_t step = n / parts;
        for (std::size_t w = 0; w < parts; ++w) {
            const std::size_t lo = step * w;
            const std::size_t hi = w + 1 == parts ? n : step * (w + 1);
            uploads.push_back(local_depth_sort({all.begin() + lo, all.begin() + hi}));
        }
        std::shuffle(uploads.begin(), uploads.end(), rng);

        RankMerger merger;
        for (const auto& up : uploads) {
            merger.merge(up);
        }
        CHECK(merger.merges() == parts);
        CHECK(is_depth_sorted(merger.merged()));
        const HashIndex idx = build_hash_index(merger.merged());
        CHECK(is_permutation_index(idx));
        CHECK(idx.ranks == counting_ranks(all));

        // Monotone: strictly nearer cells always receive smaller ranks.
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (all[k].vd < all[k + 1].vd) {
                CHECK(idx.ranks[k] < idx.ranks[k + 1]);
            }
        }
    }
}

TEST_CASE("merger reuse across frames") {
    RankMerger merger;
    merger.merge(std::vector<DepthCell>{{3, 0}, {4, 1}});
    merger.reset();
    CHECK(merger.merged().empty());
    CHECK(merger.merges() == 0);
    merger.merge(std::vector<DepthCell>{{2, 1}});
    merger.merge(std::vector<DepthCell>{{1, 0}});
    CHECK(merger.merged() == std::vector<DepthCell>{{1, 0}, {2, 1}});
    HashIndex idx;
    build_hash_index(merger.merged(), idx);
    CHECK(idx.ranks == std::vector<std::uint32_t>{0, 1});
}
