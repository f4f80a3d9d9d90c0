#include "../support/generators.hpp"
#include "../support/oracles.hpp"

#include "focustree/error.hpp"
#include "focustree/sampler.hpp"

#include <doctest.h>

#include <set>

using namespace focustree;

namespace {

std::vector<PlanarPoint> planar(std::initializer_list<Vec2> xs) {
    std::vector<PlanarPoint> out;
    PointId id = 0;
    for (const auto& p : xs) out.push_back({id++, p});
    return out;
}

std::vector<PlanarPoint> random_planar(gen::Rng& rng, std::size_t n, bool lattice) {
    const auto pts = lattice ? gen::lattice(rng, n, 20) : gen::blobs(rng, n, gen::pick(rng, 1, 6));
    std::vector<PlanarPoint> out;
    for (const auto& p : pts) out.push_back({p.id, {p.x, p.y}});
    return out;
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS((GridConfig{0.0, 1}.validate()), Error);
    CHECK_THROWS_AS((GridConfig{1.0, -1}.validate()), Error);
    CHECK_NOTHROW((GridConfig{0.1, 0}.validate()));
}

TEST_CASE("build_grid examples") {
    const auto one = build_grid(planar({{3, 4}}), {1.0, 1});
    REQUIRE(one.cells.size() == 1);
    CHECK(one.cells.begin()->second.density() == 1);

    const auto square = build_grid(planar({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), {2.0, 1});
    REQUIRE(square.cells.size() == 1);
    CHECK(square.cells.begin()->second.density() == 4);

    CHECK_THROWS_AS(build_grid({}, {1.0, 1}), Error);
}

TEST_CASE("build_grid matches independent re-binning") {
    gen::Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<PlanarPoint> pts(100);
        for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {i, {gen::uniform(rng, 0, 1), gen::uniform(rng, 0, 1)}};
        const auto grid = build_grid(pts, {0.25, 1});
        const auto ref = oracle::bin(pts, 0.25);
        CHECK(grid.cells.size() <= 16);
        CHECK(grid.total_density() == 100);
        REQUIRE(grid.cells.size() == ref.size());
        auto it = ref.begin();
        for (const auto& [key, cell] : grid.cells) {
            CHECK(key.row == it->first.row);
            CHECK(key.col == it->first.col);
            CHECK(cell.members == it->second);
            ++it;
        }
    }
}

TEST_CASE("remove_redundant examples") {
    gen::Rng rng(2);
    const auto pts = random_planar(rng, 300, false);
    const auto grid = build_grid(pts, {5.0, 1});
    CHECK(remove_redundant(grid, 0) == grid);

    const auto pair = build_grid(planar({{0.5, 0.5}, {1.5, 0.5}, {1.6, 0.4}}), {1.0, 1});
    REQUIRE(pair.cells.size() == 2);
    const auto merged = remove_redundant(pair, 1);
    REQUIRE(merged.cells.size() == 1);
    CHECK(merged.total_density() == 3);

    std::vector<PlanarPoint> block;
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) block.push_back({PointId(block.size()), {c + 0.5, r + 0.5}});
    const auto kept = remove_redundant(build_grid(block, {1.0, 1}), 1);
    CHECK(kept.total_density() == 25);
    CHECK(kept.cells.size() == 9);
    for (const auto& [a, ca] : kept.cells)
        for (const auto& [b, cb] : kept.cells)
            if (!(a == b)) CHECK(chebyshev(a, b) >= 2);
}

TEST_CASE("remove_redundant matches the quadratic reference and is idempotent") {
    gen::Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto pts = random_planar(rng, gen::pick(rng, 1, 800), trial % 4 == 0);
        const double k = gen::uniform(rng, 0.3, 8.0);
        const int alpha = static_cast<int>(gen::pick(rng, 0, 4));
        const auto grid = build_grid(pts, {k, alpha});
        const auto kept = remove_redundant(grid, alpha);
        const auto ref = oracle::suppress(oracle::bin(pts, k), alpha);
        REQUIRE(kept.cells.size() == ref.own.size());
        std::size_t total = 0;
        for (const auto& [key, cell] : kept.cells) {
            const oracle::Cell ok{key.row, key.col};
            REQUIRE(ref.own.count(ok));
            CHECK(cell.members == ref.own.at(ok));
            CHECK(cell.absorbed == ref.absorbed.at(ok));
            total += cell.density();
        }
        CHECK(total == pts.size());
        CHECK(remove_redundant(kept, alpha) == kept);
        for (const auto& [a, ca] : kept.cells)
            for (const auto& [b, cb] : kept.cells)
                if (a < b) CHECK(chebyshev(a, b) > alpha);
    }
}

TEST_CASE("select_medoids examples") {
    const auto single = planar({{1, 1}});
    auto reps = select_medoids(build_grid(single, {10.0, 0}), single);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0] == Representative{0, 1});

    const auto two = planar({{1, 1}, {2, 2}});
    reps = select_medoids(build_grid(two, {10.0, 0}), two);
    CHECK(reps[0].id == 0);

    std::vector<PlanarPoint> line{{7, {0, 0}}, {3, {1, 0}}, {5, {2, 0}}, {1, {10, 0}}};
    reps = select_medoids(build_grid(line, {20.0, 0}), line);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].id == 3);
    CHECK(reps[0].density == 4);
}

TEST_CASE("medoids equal the brute-force optimum") {
    gen::Rng rng(33);
    for (int trial = 0; trial < 80; ++trial) {
        const auto pts = random_planar(rng, gen::pick(rng, 1, 500), trial % 3 == 0);
        std::vector<std::size_t> all(pts.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        CHECK(exact_medoid(pts, all) == oracle::medoid(pts, all));

        const auto grid = remove_redundant(build_grid(pts, {gen::uniform(rng, 1, 20), 1}), 1);
        const auto reps = select_medoids(grid, pts);
        auto it = reps.begin();
        for (const auto& [key, cell] : grid.cells) {
            CHECK(it->id == pts[oracle::medoid(pts, cell.members)].id);
            CHECK(it->density == cell.density());
            ++it;
        }
    }
}

TEST_CASE("sample conservation, membership and separation") {
    gen::Rng rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        const auto pts = random_planar(rng, gen::pick(rng, 1, 2000), trial % 5 == 0);
        const GridConfig cfg{gen::uniform(rng, 0.5, 10), static_cast<int>(gen::pick(rng, 0, 3))};
        const auto reps = sample(pts, cfg);
        std::size_t total = 0;
        std::set<PointId> ids, input;
        for (const auto& p : pts) input.insert(p.id);
        for (const auto& r : reps) {
            total += r.density;
            CHECK(input.count(r.id));
            CHECK(ids.insert(r.id).second);
        }
        CHECK(total == pts.size());
        CHECK(sample(pts, cfg) == reps);
        // Kept cells are more than alpha apart, and medoids stay in their own cell.
        std::map<PointId, Vec2> pos;
        for (const auto& p : pts) pos[p.id] = p.pos;
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                CHECK(distance(pos[reps[i].id], pos[reps[j].id]) > cfg.window * cfg.cell_size - 1e-9);
    }
}

TEST_CASE("sample keeps at least one representative per separated blob") {
    gen::Rng rng(12);
    std::vector<PlanarPoint> pts;
    const Vec2 centers[] = {{0, 0}, {40, 0}, {0, 40}, {40, 40}};
    std::normal_distribution<double> z(0, 2);
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 50; ++i) pts.push_back({PointId(pts.size()), {centers[b].x + z(rng), centers[b].y + z(rng)}});
    const auto reps = sample(pts, {20.0, 0});
    for (const auto& c : centers) {
        bool found = false;
        for (const auto& r : reps)
            if (distance(pts[r.id].pos, c) < 15) found = true;
        CHECK(found);
    }
    CHECK(sample(planar({{5, 5}}), {1.0, 1}) == RepresentativeSet{{0, 1}});
}
