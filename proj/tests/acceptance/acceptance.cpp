// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any selected criterion fails.
//
//   acceptance                         run everything
//   acceptance --only performance      run the listed criteria
//   acceptance --skip performance      run all but the listed criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tubestyle/compositor.hpp"
#include "tubestyle/runtime/bench.hpp"
#include "tubestyle/runtime/engine.hpp"
#include "tubestyle/runtime/sort_round.hpp"
#include "tubestyle/runtime/wire.hpp"

using namespace tubestyle;
using namespace tubestyle::runtime;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Settings {
    std::uint32_t perfFrames = 10;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int precision = 2) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << v;
    return s.str();
}

// ---------------------------------------------------------------------------
// Sort/rank oracle

std::vector<DepthCell> random_cell_set(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), rng);

    std::uniform_real_distribution<float> depth(-50.0f, 200.0f);
    std::vector<float> pool(1 + rng() % 8);
    for (auto& d : pool) {
        d = depth(rng);
    }
    const unsigned dupPercent = static_cast<unsigned>(rng() % 60);
    std::vector<DepthCell> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
        const float vd = rng() % 100 < dupPercent ? pool[rng() % pool.size()] : depth(rng);
        cells[i] = {vd, ids[i]};
    }
    return cells;
}

std::vector<std::uint32_t> brute_force_ranks(std::vector<DepthCell> cells) {
    std::sort(cells.begin(), cells.end(), [](const DepthCell& a, const DepthCell& b) {
        return a.vd != b.vd ? a.vd < b.vd : a.id < b.id;
    });
    std::vector<std::uint32_t> ranks(cells.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        ranks[cells[r].id] = static_cast<std::uint32_t>(r);
    }
    return ranks;
}

// Runs one distributed sort cycle over real threads and channels. Returns the
// index every context ended up with (master first).
std::vector<HashIndex> distributed_ranks(const std::vector<DepthCell>& cells, std::uint32_t p) {
    const std::size_t n = cells.size();
    const std::size_t step = n / p;
    auto chunk = [&](std::uint32_t w) {
        const std::size_t lo = step * w;
        const std::size_t hi = w + 1 == p ? n : step * (w + 1);
        return std::vector<DepthCell>(cells.begin() + static_cast<std::ptrdiff_t>(lo),
                                      cells.begin() + static_cast<std::ptrdiff_t>(hi));
    };

    ByteChannel toMaster;
    std::vector<std::unique_ptr<ByteChannel>> inboxes;
    std::vector<ByteChannel*> outboxes;
    for (std::uint32_t w = 1; w < p; ++w) {
        inboxes.push_back(std::make_unique<ByteChannel>());
        outboxes.push_back(inboxes.back().get());
    }
    std::vector<HashIndex> results(p);
    std::vector<std::thread> threads;
    for (std::uint32_t w = 1; w < p; ++w) {
        threads.emplace_back([&, w] {
            std::vector<DepthCell> local = chunk(w);
            local_depth_sort_in_place(local);
            results[w] = worker_sort_exchange(0, static_cast<std::uint16_t>(w), local, *inboxes[w - 1], toMaster);
        });
    }
    std::vector<DepthCell> own = chunk(0);
    local_depth_sort_in_place(own);
    MasterSortExchange master;
    results[0] = master.run(0, own, toMaster, outboxes);
    for (auto& t : threads) {
        t.join();
    }
    return results;
}

Outcome sort_oracle(const Settings&) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::size_t runs = 0;
    std::size_t totalCells = 0;
    for (int set = 0; set < 200; ++set) {
        // Log-uniform sizes over [1, 1e5], with both extremes forced.
        std::size_t n = static_cast<std::size_t>(std::pow(10.0, 5.0 * std::uniform_real_distribution<double>(0, 1)(rng)));
        n = set == 0 ? 1 : set == 1 ? 100000 : std::clamp<std::size_t>(n, 1, 100000);
        const std::vector<DepthCell> cells = random_cell_set(rng, n);
        const std::vector<std::uint32_t> oracle = brute_force_ranks(cells);
        totalCells += n;
        for (std::uint32_t p : {1u, 2u, 3u, 4u, 8u}) {
            ++runs;
            for (const HashIndex& idx : distributed_ranks(cells, p)) {
                if (idx.ranks != oracle) {
                    return {false, "set " + std::to_string(set) + " (n=" + std::to_string(n) +
                                       ", P=" + std::to_string(p) + ") ranks differ from the oracle"};
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    return {secs < 60.0, std::to_string(runs) + " distributed runs over " + std::to_string(totalCells) +
                             " cells match the brute-force ranks in " + fmt(secs, 1) + " s (limit 60 s)"};
}

// ---------------------------------------------------------------------------
// Partition equivalence

Outcome partition_equivalence(const Settings&) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(77);
    const VariableSet opaque[] = {
        {VisualVariable::Size, VisualVariable::Color},
        {VisualVariable::Color},
        {VisualVariable::Size},
        {VisualVariable::Size, VisualVariable::Color, VisualVariable::Value},
        {},
    };
    std::size_t comparisons = 0;
    for (int bundle = 0; bundle < 20; ++bundle) {
        const std::size_t tubes = bundle == 0 ? 2000 : 1 + rng() % 2000;
        const std::size_t perLine = 2 + rng() % 30;
        const Dataset ds = generate_synthetic_bundle(tubes, perLine, rng());
        Camera cam = frame_bounds(ds.bounds.lo, ds.bounds.hi, 30, {320, 240});
        cam = trackball_rotate(cam, std::uniform_real_distribution<double>(-1, 1)(rng),
                               std::uniform_real_distribution<double>(-0.4, 0.4)(rng));
        MappingSpec spec;
        spec.enabled = opaque[bundle % std::size(opaque)];
        spec.orientation = rng() % 2 ? Orientation::NearIsMax : Orientation::NearIsMin;
        const double scale = ds.bounds.diagonal();
        spec.radius = {0.001 * scale, 0.006 * scale};

        Engine one(ds, cam, spec, {1, {}});
        const FrameTile base = one.render_frame().image;
        for (std::uint32_t p : {2u, 4u, 8u}) {
            Engine many(ds, cam, spec, {p, {}});
            const FrameTile img = many.render_frame().image;
            ++comparisons;
            if (img.color != base.color || img.width != base.width || img.height != base.height) {
                return {false, "bundle " + std::to_string(bundle) + " (" + std::to_string(tubes) +
                                   " tubes) differs at P=" + std::to_string(p)};
            }
        }
    }
    const double secs = seconds_since(t0);
    return {secs < 120.0, std::to_string(comparisons) + " composited images byte-identical to P=1 in " +
                              fmt(secs, 1) + " s (limit 120 s)"};
}

// ---------------------------------------------------------------------------
// Compositing algebra

FrameTile random_tile(std::mt19937_64& rng, std::uint32_t w, std::uint32_t h) {
    FrameTile t(w, h);
    const std::uint16_t worker = static_cast<std::uint16_t>(rng() % 4);
    for (std::size_t i = 0; i < t.pixel_count(); ++i) {
        if (rng() % 4 == 0) {
            continue;
        }
        t.depth[i] = 0.5f + static_cast<float>(rng() % 6);
        t.provenance[i] = rng() % 5 == 0 ? static_cast<std::uint16_t>(rng() % 4) : worker;
        t.color[i] = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                      static_cast<std::uint8_t>(rng()), 255};
    }
    return t;
}

Outcome compositing_algebra(const Settings&) {
    std::mt19937_64 rng(31337);
    const int cases = 1000;
    for (int i = 0; i < cases; ++i) {
        const std::uint32_t w = 1 + rng() % 24;
        const std::uint32_t h = 1 + rng() % 16;
        const FrameTile a = random_tile(rng, w, h);
        const FrameTile b = random_tile(rng, w, h);
        const FrameTile c = random_tile(rng, w, h);
        const FrameTile identity(w, h, a.background);
        if (!composited(a, b).same_pixels(composited(b, a))) {
            return {false, "commutativity fails in case " + std::to_string(i)};
        }
        if (!composited(composited(a, b), c).same_pixels(composited(a, composited(b, c)))) {
            return {false, "associativity fails in case " + std::to_string(i)};
        }
        if (!composited(a, identity).same_pixels(a) || !composited(identity, a).same_pixels(a)) {
            return {false, "identity fails in case " + std::to_string(i)};
        }
    }
    return {true, std::to_string(cases) + " random pairs and triples: commutative, associative, background is identity"};
}

// ---------------------------------------------------------------------------
// Linear mapping

Outcome linear_mapping(const Settings&) {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int specs = 2000;
    for (int i = 0; i < specs; ++i) {
        const std::uint64_t rankMax = 1 + rng() % 2'000'000;
        const double a = u(rng) * 10.0 - 5.0;
        const double b = a + 1e-6 + u(rng) * 10.0;
        if (std::abs(linear_map(0, rankMax, a, b) - a) > 1e-9 || std::abs(linear_map(rankMax, rankMax, a, b) - b) > 1e-9) {
            return {false, "endpoint mismatch for rankMax " + std::to_string(rankMax)};
        }
        const std::uint64_t r = rng() % rankMax;
        if (!(linear_map(r, rankMax, a, b) < linear_map(r + 1, rankMax, a, b)) &&
            !(linear_map(r, rankMax, a, b) == linear_map(r + 1, rankMax, a, b) && (b - a) / rankMax < 1e-15 * std::abs(b))) {
            return {false, "not monotone at rank " + std::to_string(r)};
        }

        MappingSpec spec;
        spec.enabled = VariableSet(static_cast<std::uint8_t>(rng() % 16));
        spec.radius = {0.001 + u(rng), 1.001 + u(rng)};
        spec.nearColor = {u(rng), u(rng), u(rng)};
        spec.farColor = {u(rng), u(rng), u(rng)};
        spec.value = {u(rng) * 0.5, 0.5 + u(rng) * 0.5};
        spec.alpha = {u(rng) * 0.5, 0.5 + u(rng) * 0.5};
        const Rgb base{u(rng), u(rng), u(rng)};
        const std::uint64_t rank = rng() % (rankMax + 1);
        MappingSpec nearMax = spec;
        nearMax.orientation = Orientation::NearIsMax;
        MappingSpec nearMin = spec;
        nearMin.orientation = Orientation::NearIsMin;
        const VertexStyle x = style_vertex(rank, rankMax, nearMax, base);
        const VertexStyle y = style_vertex(rankMax - rank, rankMax, nearMin, base);
        bool same = std::abs(x.radius - y.radius) <= 1e-9 && std::abs(x.alpha - y.alpha) <= 1e-9;
        for (int ch = 0; ch < 3; ++ch) {
            same = same && std::abs(x.rgb[ch] - y.rgb[ch]) <= 1e-9;
        }
        if (!same) {
            return {false, "orientation reversal fails for variables " + format_variable_set(spec.enabled)};
        }
    }
    return {true, std::to_string(specs) + " randomized specs: exact endpoints, monotone, reversal-symmetric (1e-9)"};
}

// ---------------------------------------------------------------------------
// Two-round pipeline

Outcome two_rounds(const Settings&) {
    const Dataset ds = generate_synthetic_bundle(200, 30, 5);
    const Camera cam = frame_bounds(ds.bounds.lo, ds.bounds.hi, 30, {200, 150});
    MappingSpec sizeColor;
    sizeColor.enabled = VariableSet{VisualVariable::Size, VisualVariable::Color};
    MappingSpec colorOnly;
    colorOnly.enabled = VariableSet{VisualVariable::Color};

    for (std::uint32_t p : {1u, 4u}) {
        Engine engine(ds, cam, sizeColor, {p, {}});
        for (int f = 0; f < 3; ++f) {
            const std::uint64_t before = engine.total_sort_rounds();
            const auto stats = engine.handle_interaction(0.02, 0.0).stats;
            if (stats.sortRounds != 2 || engine.total_sort_rounds() - before != 2) {
                return {false, "size+color reported " + std::to_string(stats.sortRounds) + " rounds at P=" +
                                   std::to_string(p)};
            }
        }
        engine.set_mapping(colorOnly);
        for (int f = 0; f < 3; ++f) {
            const std::uint64_t before = engine.total_sort_rounds();
            const auto stats = engine.handle_interaction(0.02, 0.0).stats;
            if (stats.sortRounds != 1 || engine.total_sort_rounds() - before != 1) {
                return {false, "color only reported " + std::to_string(stats.sortRounds) + " rounds at P=" +
                                   std::to_string(p)};
            }
        }
    }
    return {true, "size+color: 2 sort cycles per frame; color only: 1 (P=1 and P=4)"};
}

// ---------------------------------------------------------------------------
// Roll invariance

Outcome roll_invariance(const Settings&) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    MappingSpec spec;
    spec.enabled = VariableSet{VisualVariable::Size, VisualVariable::Color};
    int checks = 0;
    for (int trial = 0; trial < 8; ++trial) {
        const Dataset ds = generate_synthetic_bundle(50 + rng() % 200, 5 + rng() % 30, rng());
        Camera cam = frame_bounds(ds.bounds.lo, ds.bounds.hi, 30, {128, 96});
        cam = trackball_rotate(cam, u(rng), 0.4 * u(rng));
        Engine engine(ds, cam, spec, {3, {}});
        engine.render_frame();
        const HashIndex lines = engine.last_index(SortPass::Polyline);
        const HashIndex mesh = engine.last_index(SortPass::Mesh);
        for (double deg : {0.5, 45.0, 90.0, 180.0, 270.0 + u(rng)}) {
            engine.set_camera(roll(cam, deg));
            engine.render_frame();
            ++checks;
            if (engine.last_index(SortPass::Polyline) != lines || engine.last_index(SortPass::Mesh) != mesh) {
                return {false, "hash index changed after a roll of " + fmt(deg) + " degrees"};
            }
        }
    }
    return {true, std::to_string(checks) + " rolls leave both hash indices bit-identical"};
}

// ---------------------------------------------------------------------------
// Desk-scale performance

Outcome performance(const Settings& settings) {
    const unsigned cores = std::thread::hardware_concurrency();
    const Dataset ds = generate_synthetic_bundle(1600, 150, 1);
    const std::size_t meshVertices = tube_vertex_count(ds.totalVertices, kDefaultTubeSides);
    const Viewport size{1024, 768};
    const Camera cam = frame_bounds(ds.bounds.lo, ds.bounds.hi, 30, size);
    MappingSpec spec;
    spec.enabled = VariableSet{VisualVariable::Size, VisualVariable::Color};

    BenchOptions options;
    options.workerCounts = {1, 4};
    options.framesPerSample = settings.perfFrames;
    const auto records = benchmark_run(ds, cam, spec, options);

    std::ostringstream table;
    write_bench_table(table, records, size);
    std::cout << table.str();

    // Check the efficiency column as emitted against the emitted speedup.
    std::istringstream rows(table.str());
    std::string line;
    std::getline(rows, line);
    bool columnsOk = true;
    double speedup4 = 0.0;
    while (std::getline(rows, line)) {
        std::istringstream cols(line);
        std::uint32_t p = 0;
        double ms = 0;
        double sortMs = 0;
        double speedup = 0;
        double efficiency = 0;
        cols >> p >> ms >> sortMs >> speedup >> efficiency;
        columnsOk = columnsOk && std::abs(efficiency - speedup / p) <= 0.01;
        if (p == 4) {
            speedup4 = speedup;
        }
    }

    const std::string measured = std::to_string(meshVertices) + " mesh vertices at 1024x768, speedup at P=4 " +
                                 fmt(speedup4) + ", efficiency column " + (columnsOk ? "consistent" : "INCONSISTENT");
    if (meshVertices < 1'400'000 || !columnsOk) {
        return {false, measured};
    }
    if (cores < 4) {
        return {false, "UNVERIFIED: host exposes " + std::to_string(cores) +
                           " hardware thread(s), criterion needs >= 4 cores; measured " + measured};
    }
    return {speedup4 >= 1.5, measured + " (threshold 1.5)"};
}

// ---------------------------------------------------------------------------
// Tessellation counts

Outcome tessellation_counts(const Settings&) {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + rng() % 200;
        const auto sides = static_cast<std::uint32_t>(3 + rng() % 14);
        Polyline line;
        line.vertices.push_back({u(rng), u(rng), u(rng)});
        for (std::size_t k = 1; k < n; ++k) {
            line.vertices.push_back(line.vertices.back() + Vec3{0.05 + std::abs(u(rng)), u(rng), u(rng)});
        }
        std::vector<double> radii(n);
        for (auto& r : radii) {
            r = 0.01 + 0.1 * std::abs(u(rng));
        }
        const TubeMesh mesh = tessellate_tube(line, radii, sides);
        if (mesh.vertex_count() != sides * n || mesh.triangles.size() != 2 * sides * (n - 1)) {
            return {false, "polyline " + std::to_string(i) + " with " + std::to_string(n) + " points and " +
                               std::to_string(sides) + " sides has wrong counts"};
        }
    }
    return {true, "100 random polylines: vertices = sides*numPts, triangles = 2*sides*(numPts-1)"};
}

struct Criterion {
    std::string key;
    std::function<Outcome(const Settings&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"sort_oracle", sort_oracle},
        {"partition_equivalence", partition_equivalence},
        {"compositing_algebra", compositing_algebra},
        {"linear_mapping", linear_mapping},
        {"two_rounds", two_rounds},
        {"roll_invariance", roll_invariance},
        {"performance", performance},
        {"tessellation_counts", tessellation_counts},
    };

    CLI::App app{"tubestyle acceptance suite"};
    std::vector<std::string> only;
    std::vector<std::string> skip;
    Settings settings;
    app.add_option("--only", only, "criteria to run")->delimiter(',');
    app.add_option("--skip", skip, "criteria to leave out")->delimiter(',');
    app.add_option("--perf-frames", settings.perfFrames, "frames per worker count in the performance run")
        ->check(CLI::PositiveNumber);
    bool list = false;
    app.add_flag("--list", list, "print the criterion keys");
    CLI11_PARSE(app, argc, argv);

    for (const auto& name : only) {
        if (std::none_of(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.key == name; })) {
            std::cerr << "unknown criterion '" << name << "'\n";
            return 2;
        }
    }
    if (list) {
        for (const auto& c : criteria) {
            std::cout << c.key << '\n';
        }
        return 0;
    }

    int failures = 0;
    for (const auto& c : criteria) {
        const bool selected = only.empty() || std::find(only.begin(), only.end(), c.key) != only.end();
        if (!selected || std::find(skip.begin(), skip.end(), c.key) != skip.end()) {
            continue;
        }
        Outcome outcome;
        try {
            outcome = c.run(settings);
        } catch (const std::exception& e) {
            outcome = {false, std::string("threw: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "PASS " : "FAIL ") << c.key << ": " << outcome.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
