#include "../support/generators.hpp"

#include "focustree/geometry.hpp"
#include "focustree/spatial_index.hpp"

#include <doctest.h>

#include <limits>

using namespace focustree;

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool inside_convex(const std::vector<Vec2>& poly, const Vec2& p, double tol = 1e-9) {
    for (std::size_t i = 0; i < poly.size(); ++i)
        if (cross(poly[i], poly[(i + 1) % poly.size()], p) < -tol) return false;
    return true;
}

}  // namespace

TEST_CASE("convex hull of a square with interior and collinear points") {
    const auto hull = convex_hull({{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}, {0, 1}});
    REQUIRE(hull.size() == 4);
    for (std::size_t i = 0; i < hull.size(); ++i) CHECK(cross(hull[i], hull[(i + 1) % 4], hull[(i + 2) % 4]) > 0);
}

TEST_CASE("hull degenerate inputs") {
    CHECK(convex_hull({}).empty());
    CHECK(convex_hull({{1, 1}}).size() == 1);
    CHECK(convex_hull({{1, 1}, {1, 1}}).size() == 1);
    CHECK(convex_hull({{0, 0}, {1, 1}, {2, 2}}).size() == 2);
}

TEST_CASE("padded polygon encloses every disc around the input") {
    gen::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec2> pts(gen::pick(rng, 1, 30));
        for (auto& p : pts) p = {gen::uniform(rng, -5, 5), gen::uniform(rng, -5, 5)};
        const double pad = gen::uniform(rng, 0.1, 2.0);
        const auto poly = pad_polygon(convex_hull(pts), pad);
        REQUIRE(poly.size() >= 3);
        for (const auto& p : pts)
            for (int a = 0; a < 64; ++a) {
                const double t = a * 6.283185307179586 / 64;
                CHECK(inside_convex(poly, {p.x + pad * std::cos(t), p.y + pad * std::sin(t)}));
            }
    }
}

TEST_CASE("viewport scale") {
    const Viewport v{800, 400};
    CHECK(v.layout_per_pixel({0, 0, 80, 10}) == doctest::Approx(0.1));
    CHECK(v.layout_per_pixel({0, 0, 10, 80}) == doctest::Approx(0.2));
    CHECK(v.layout_per_pixel({3, 3, 3, 3}) == 1.0);
}

TEST_CASE("nearest index agrees with exhaustive search") {
    gen::Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const bool grid = trial % 3 == 0;
        std::vector<PlanarPoint> sites(gen::pick(rng, 1, 400));
        for (std::size_t i = 0; i < sites.size(); ++i) {
            sites[i].id = i;
            sites[i].pos = grid ? Vec2{double(gen::pick(rng, 0, 6)), double(gen::pick(rng, 0, 6))}
                                : Vec2{gen::uniform(rng, 0, 50), gen::uniform(rng, 0, trial % 2 ? 50 : 0.001)};
        }
        const NearestIndex index(sites);
        for (int q = 0; q < 200; ++q) {
            const Vec2 p = grid ? Vec2{double(gen::pick(rng, 0, 12)) * 0.5 - 1, double(gen::pick(rng, 0, 12)) * 0.5 - 1}
                                : Vec2{gen::uniform(rng, -20, 70), gen::uniform(rng, -20, 70)};
            std::size_t best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < sites.size(); ++i) {
                const double d = distance_sq(p, sites[i].pos);
                if (d < bd) {
                    bd = d;
                    best = i;
                }
            }
            const auto hit = index.nearest(p);
            CHECK(hit.site == best);
            CHECK(hit.distance_sq == bd);
            const double r = gen::uniform(rng, 0, 10);
            CHECK(index.any_within(p, r) == (bd <= r * r));
        }
    }
}
