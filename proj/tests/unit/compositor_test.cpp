#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "tubestyle/compositor.hpp"

using namespace tubestyle;

namespace {

// Few distinct depths so that ties are common.
FrameTile random_tile(std::mt19937_64& rng, std::uint32_t w, std::uint32_t h, std::uint16_t worker) {
    FrameTile t(w, h);
    for (std::size_t i = 0; i < t.pixel_count(); ++i) {
        if (rng() % 3 == 0) {
            continue;
        }
        t.depth[i] = 1.0f + static_cast<float>(rng() % 4);
        t.provenance[i] = worker;
        t.color[i] = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                      static_cast<std::uint8_t>(rng()), 255};
    }
    return t;
}

}  // namespace

TEST_CASE("pairwise examples") {
    FrameTile a(1, 1);
    a.depth[0] = 0.3f;
    a.color[0] = {255, 0, 0, 255};
    a.provenance[0] = 2;
    FrameTile b(1, 1);
    b.depth[0] = 0.5f;
    b.color[0] = {0, 0, 255, 255};
    b.provenance[0] = 1;
    FrameTile out = composited(a, b);
    CHECK(out.color[0] == Rgba8{255, 0, 0, 255});
    CHECK(out.depth[0] == 0.3f);
    CHECK(composited(b, a).same_pixels(out));

    b.depth[0] = 0.3f;
    out = composited(a, b);
    CHECK(out.provenance[0] == 1);
    CHECK(out.color[0] == Rgba8{0, 0, 255, 255});

    CHECK(composited(a, FrameTile(1, 1)).same_pixels(a));
}

TEST_CASE("composite errors") {
    FrameTile a(2, 2);
    CHECK_THROWS_AS(composited(a, FrameTile(2, 3)), CompositeError);
    CHECK_THROWS_AS(composite_all({}), CompositeError);
    const std::vector<FrameTile> tiles{FrameTile(2, 2), FrameTile(2, 2)};
    const std::vector<std::size_t> bad{0, 0};
    CHECK_THROWS_AS(composite_all(tiles, bad), CompositeError);
}

TEST_CASE("composite_all examples") {
    std::mt19937_64 rng(1);
    const std::vector<FrameTile> one{random_tile(rng, 4, 4, 0)};
    CHECK(composite_all(one).same_pixels(one[0]));

    // Disjoint coverage: worker w owns column w.
    std::vector<FrameTile> tiles;
    for (std::uint16_t w = 0; w < 4; ++w) {
        FrameTile t(4, 2);
        for (std::uint32_t y = 0; y < 2; ++y) {
            t.depth[t.index(w, y)] = 1.0f + w;
            t.provenance[t.index(w, y)] = w;
            t.color[t.index(w, y)] = {static_cast<std::uint8_t>(w), 0, 0, 255};
        }
        tiles.push_back(t);
    }
    const FrameTile u = composite_all(tiles);
    for (std::uint32_t x = 0; x < 4; ++x) {
        CHECK(u.provenance[u.index(x, 1)] == x);
        CHECK(u.color[u.index(x, 0)].r == x);
    }
}

TEST_CASE("compositing is commutative, associative, and order independent") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint16_t wa = rng() % 3;
        const FrameTile a = random_tile(rng, 7, 5, wa);
        const FrameTile b = random_tile(rng, 7, 5, rng() % 3);
        const FrameTile c = random_tile(rng, 7, 5, rng() % 3);
        CHECK(composited(a, b).same_pixels(composited(b, a)));
        CHECK(composited(composited(a, b), c).same_pixels(composited(a, composited(b, c))));
        CHECK(composited(a, FrameTile(7, 5)).same_pixels(a));
        CHECK(composited(a, a).same_pixels(a));
    }
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<FrameTile> tiles;
        const std::size_t n = 1 + rng() % 8;
        for (std::size_t w = 0; w < n; ++w) {
            tiles.push_back(random_tile(rng, 9, 4, static_cast<std::uint16_t>(w)));
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const FrameTile x = composite_all(tiles);
        CHECK(composite_all(tiles, order).same_pixels(x));
        for (std::size_t i = 0; i < x.pixel_count(); ++i) {
            for (const auto& t : tiles) {
                CHECK(x.depth[i] <= t.depth[i]);
            }
        }
    }
}
