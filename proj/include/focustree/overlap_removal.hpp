#pragma once

#include "focustree/geometry.hpp"

#include <span>
#include <vector>

namespace focustree {

struct Marker {
    PointId id = 0;
    double x = 0.0;
    double y = 0.0;
    double radius = 1.0;

    bool operator==(const Marker&) const = default;
};

inline constexpr double kOverlapEpsilon = 1e-6;

struct OverlapResult {
    std::vector<Marker> markers;  // input order
    bool converged = true;        // false: best effort after max_iterations
    int iterations = 0;
};

// Iterative pairwise separation: every overlapping pair is pushed apart along its
// center line by half the deficit each, sweeping pairs in index order until a sweep
// moves nothing. Coincident centers split along x, the lower id moving to +x.
// Throws Error{TooManyMarkers} above `max_markers`, Error{InvalidArgs} on a
// non-positive radius, non-finite coordinate or max_iterations < 1.
OverlapResult remove_overlaps(std::span<const Marker> markers, int max_iterations = 1000,
                              std::size_t max_markers = 800);

}  // namespace focustree
