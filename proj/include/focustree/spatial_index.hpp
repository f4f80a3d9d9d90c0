#pragma once

#include "focustree/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace focustree {

// Uniform-bucket index over a fixed site set. Queries are exact: the returned
// site minimizes squared Euclidean distance, ties broken by lowest site id.
class NearestIndex {
public:
    explicit NearestIndex(std::span<const PlanarPoint> sites);

    struct Hit {
        std::size_t site = 0;  // position in the construction span
        double distance_sq = 0.0;
    };

    // Precondition: at least one site.
    Hit nearest(const Vec2& query) const;

    // True if some site lies within `radius` (inclusive) of `query`.
    bool any_within(const Vec2& query, double radius) const;

    std::size_t size() const { return sites_.size(); }

private:
    std::int64_t cell_x(double x) const;
    std::int64_t cell_y(double y) const;
    std::span<const std::uint32_t> bucket(std::int64_t cx, std::int64_t cy) const;

    std::vector<PlanarPoint> sites_;
    Bounds bounds_;
    double cell_ = 1.0;
    std::int64_t nx_ = 1;
    std::int64_t ny_ = 1;
    std::vector<std::uint32_t> offsets_;  // CSR bucket layout, size nx*ny+1
    std::vector<std::uint32_t> entries_;
};

}  // namespace focustree
