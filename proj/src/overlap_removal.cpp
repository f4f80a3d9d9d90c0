#include "focustree/overlap_removal.hpp"

#include "focustree/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace focustree {

namespace {

using Bucket = std::pair<std::int64_t, std::int64_t>;

std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<Marker>& ms, double cell) {
    std::map<Bucket, std::vector<std::size_t>> grid;
    auto key = [cell](const Marker& m) {
        return Bucket{static_cast<std::int64_t>(std::floor(m.x / cell)), static_cast<std::int64_t>(std::floor(m.y / cell))};
    };
    for (std::size_t i = 0; i < ms.size(); ++i) grid[key(ms[i])].push_back(i);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto [bx, by] = key(ms[i]);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({bx + dx, by + dy});
                if (it == grid.end()) continue;
                for (std::size_t j : it->second)
                    if (j > i) pairs.emplace_back(i, j);
            }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

OverlapResult remove_overlaps(std::span<const Marker> markers, int max_iterations, std::size_t max_markers) {
    if (markers.size() > max_markers)
        throw Error(ErrorCode::TooManyMarkers, std::to_string(markers.size()) + " markers exceed the leaf limit of " +
                                                   std::to_string(max_markers));
    if (max_iterations < 1) throw Error(ErrorCode::InvalidArgs, "max_iterations must be >= 1");
    double max_radius = 0.0;
    for (const auto& m : markers) {
        if (!std::isfinite(m.x) || !std::isfinite(m.y))
            throw Error(ErrorCode::InvalidArgs, "marker " + std::to_string(m.id) + " has a non-finite coordinate");
        if (!(m.radius > 0.0) || !std::isfinite(m.radius))
            throw Error(ErrorCode::InvalidArgs, "marker " + std::to_string(m.id) + " needs a positive radius");
        max_radius = std::max(max_radius, m.radius);
    }

    OverlapResult result;
    result.markers.assign(markers.begin(), markers.end());
    result.converged = false;
    auto& ms = result.markers;

    while (result.iterations < max_iterations) {
        ++result.iterations;
        bool moved = false;
        for (const auto& [i, j] : candidate_pairs(ms, 2.0 * max_radius)) {
            Marker& a = ms[i];
            Marker& b = ms[j];
            const double need = a.radius + b.radius;
            const double dx = b.x - a.x;
            const double dy = b.y - a.y;
            const double d = std::hypot(dx, dy);
            if (d >= need - kOverlapEpsilon) continue;
            moved = true;
            const double half = 0.5 * (need - d);
            double ux = 1.0, uy = 0.0;  // unit vector from a to b
            if (d > 0.0) {
                ux = dx / d;
                uy = dy / d;
            } else if (a.id <= b.id) {
                ux = -1.0;  // a is the lower id and moves to +x
            }
            a.x -= ux * half;
            a.y -= uy * half;
            b.x += ux * half;
            b.y += uy * half;
        }
        if (!moved) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace focustree
