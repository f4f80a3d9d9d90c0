#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace focustree {

using PointId = std::uint64_t;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm_sq()); }
};

inline double distance_sq(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Vec2& a, const Vec2& b) { return std::sqrt(distance_sq(a, b)); }

// Point as seen by the geometric algorithms: identity plus layout position.
struct PlanarPoint {
    PointId id = 0;
    Vec2 pos;
};

struct Bounds {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double diagonal() const { return std::hypot(width(), height()); }
    bool contains(const Vec2& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    bool operator==(const Bounds&) const = default;
};

Bounds bounds_of(std::span<const PlanarPoint> points);

// Counter-clockwise convex hull (monotone chain); collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Hull of the Minkowski sum of `hull` with a disc of radius `pad`,
// approximated by a regular polygon with `segments` vertices.
std::vector<Vec2> pad_polygon(const std::vector<Vec2>& hull, double pad, int segments = 16);

// Maps a fit-to-viewport canvas onto layout units.
struct Viewport {
    double width_px = 800.0;
    double height_px = 800.0;

    // Layout units covered by one screen pixel when `bounds` is fitted to the viewport.
    double layout_per_pixel(const Bounds& bounds) const;
};

}  // namespace focustree
