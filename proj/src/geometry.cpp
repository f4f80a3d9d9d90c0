#include "focustree/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace focustree {

Bounds bounds_of(std::span<const PlanarPoint> points) {
    if (points.empty()) return {};
    Bounds b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : points) {
        b.min_x = std::min(b.min_x, p.pos.x);
        b.min_y = std::min(b.min_y, p.pos.y);
        b.max_x = std::max(b.max_x, p.pos.x);
        b.max_y = std::max(b.max_y, p.pos.y);
    }
    return b;
}

namespace {

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) return points;

    std::vector<Vec2> hull(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i > 0; --i) {
        const auto& p = points[i - 1];
        while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<Vec2> pad_polygon(const std::vector<Vec2>& hull, double pad, int segments) {
    if (hull.empty()) return {};
    if (pad <= 0.0) return hull;
    std::vector<Vec2> ring;
    ring.reserve(hull.size() * static_cast<std::size_t>(segments));
    // Circumscribe the disc so the padded polygon contains every point within `pad`.
    const double r = pad / std::cos(std::numbers::pi / segments);
    for (const auto& v : hull) {
        for (int s = 0; s < segments; ++s) {
            const double a = 2.0 * std::numbers::pi * s / segments;
            ring.push_back({v.x + r * std::cos(a), v.y + r * std::sin(a)});
        }
    }
    return convex_hull(std::move(ring));
}

double Viewport::layout_per_pixel(const Bounds& bounds) const {
    const double sx = width_px > 0 ? bounds.width() / width_px : 0.0;
    const double sy = height_px > 0 ? bounds.height() / height_px : 0.0;
    const double s = std::max(sx, sy);
    return s > 0.0 ? s : 1.0;
}

}  // namespace focustree
