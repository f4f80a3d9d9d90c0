#pragma once

#include "focustree/geometry.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace focustree {

struct GridConfig {
    double cell_size = 1.0;  // k, layout units
    int window = 1;          // alpha, whole cells (Chebyshev radius)

    void validate() const;  // throws Error{InvalidConfig}
    bool operator==(const GridConfig&) const = default;
};

struct CellKey {
    std::int64_t row = 0;
    std::int64_t col = 0;

    // Row-major order.
    auto operator<=>(const CellKey&) const = default;
};

std::int64_t chebyshev(const CellKey& a, const CellKey& b);

struct GridCell {
    // Indices into the point span the grid was built from, ascending.
    std::vector<std::size_t> members;
    // Points re-homed here from cells suppressed by redundancy removal, ascending.
    std::vector<std::size_t> absorbed;

    std::size_t density() const { return members.size() + absorbed.size(); }
    bool operator==(const GridCell&) const = default;
};

// Occupied cells only, iterated in row-major order.
struct Grid {
    Vec2 origin;
    double cell_size = 1.0;
    std::map<CellKey, GridCell> cells;

    std::size_t total_density() const;
    bool operator==(const Grid&) const = default;
};

struct Representative {
    PointId id = 0;
    std::size_t density = 0;
    bool operator==(const Representative&) const = default;
};

using RepresentativeSet = std::vector<Representative>;

// Bins points into k x k cells anchored at the minimum corner of the input.
// Throws Error{EmptyInput}.
Grid build_grid(std::span<const PlanarPoint> points, const GridConfig& config);

// Row-major greedy suppression: the first unvisited occupied cell is kept and
// suppresses every unvisited occupied cell within Chebyshev distance `window`.
// Members of suppressed cells move into the kept cell with the nearest center
// (ties: lowest key). window == 0 is the identity.
Grid remove_redundant(const Grid& grid, int window);

// One representative per cell: the cell's own member minimizing the summed
// Euclidean distance to the other own members (ties: lowest id). The entry
// density is the full cell density, absorbed points included.
RepresentativeSet select_medoids(const Grid& grid, std::span<const PlanarPoint> points);

RepresentativeSet sample(std::span<const PlanarPoint> points, const GridConfig& config);

// Exact medoid of `candidates` (indices into `points`) with respect to the same
// set, using triangle-inequality lower bounds to skip candidates. Ties: lowest id.
std::size_t exact_medoid(std::span<const PlanarPoint> points, std::span<const std::size_t> candidates);

}  // namespace focustree
