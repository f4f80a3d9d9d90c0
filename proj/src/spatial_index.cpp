#include "focustree/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace focustree {

NearestIndex::NearestIndex(std::span<const PlanarPoint> sites) : sites_(sites.begin(), sites.end()) {
    if (sites_.empty()) return;
    bounds_ = bounds_of(sites_);
    const double w = bounds_.width();
    const double h = bounds_.height();
    const double m = static_cast<double>(sites_.size());
    // Around two sites per bucket for uniform input.
    double cell = std::sqrt(std::max(w * h, 0.0) * 2.0 / m);
    if (!(cell > 0.0)) cell = std::max(w, h) * 2.0 / m;
    if (!(cell > 0.0)) cell = 1.0;
    const double max_buckets = 4.0 * m + 16.0;
    while ((std::floor(w / cell) + 1.0) * (std::floor(h / cell) + 1.0) > max_buckets) cell *= 2.0;
    cell_ = cell;
    nx_ = static_cast<std::int64_t>(w / cell_) + 1;
    ny_ = static_cast<std::int64_t>(h / cell_) + 1;

    const auto nb = static_cast<std::size_t>(nx_ * ny_);
    std::vector<std::size_t> bucket_of(sites_.size());
    offsets_.assign(nb + 1, 0);
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const auto b = static_cast<std::size_t>(cell_y(sites_[i].pos.y) * nx_ + cell_x(sites_[i].pos.x));
        bucket_of[i] = b;
        ++offsets_[b + 1];
    }
    for (std::size_t b = 0; b < nb; ++b) offsets_[b + 1] += offsets_[b];
    entries_.resize(sites_.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < sites_.size(); ++i) entries_[fill[bucket_of[i]]++] = static_cast<std::uint32_t>(i);
}

std::int64_t NearestIndex::cell_x(double x) const {
    const auto c = static_cast<std::int64_t>(std::floor((x - bounds_.min_x) / cell_));
    return std::clamp<std::int64_t>(c, 0, nx_ - 1);
}

std::int64_t NearestIndex::cell_y(double y) const {
    const auto c = static_cast<std::int64_t>(std::floor((y - bounds_.min_y) / cell_));
    return std::clamp<std::int64_t>(c, 0, ny_ - 1);
}

std::span<const std::uint32_t> NearestIndex::bucket(std::int64_t cx, std::int64_t cy) const {
    const auto b = static_cast<std::size_t>(cy * nx_ + cx);
    return {entries_.data() + offsets_[b], entries_.data() + offsets_[b + 1]};
}

namespace {

// Visits the cells at Chebyshev distance exactly `r` from (cx, cy), clipped to the grid.
template <typename F>
void for_ring(std::int64_t cx, std::int64_t cy, std::int64_t r, std::int64_t nx, std::int64_t ny, F&& visit) {
    const std::int64_t x0 = cx - r, x1 = cx + r, y0 = cy - r, y1 = cy + r;
    for (std::int64_t y = std::max<std::int64_t>(y0, 0); y <= std::min(y1, ny - 1); ++y) {
        if (y == y0 || y == y1) {
            for (std::int64_t x = std::max<std::int64_t>(x0, 0); x <= std::min(x1, nx - 1); ++x) visit(x, y);
        } else {
            if (x0 >= 0) visit(x0, y);
            if (r > 0 && x1 < nx) visit(x1, y);
        }
    }
}

}  // namespace

NearestIndex::Hit NearestIndex::nearest(const Vec2& query) const {
    const std::int64_t cx = cell_x(query.x);
    const std::int64_t cy = cell_y(query.y);
    const std::int64_t r_max = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
    // Slack for sites bucketed across a boundary by rounding.
    const double slack = 1e-9 * (cell_ + bounds_.diagonal());

    Hit best{0, std::numeric_limits<double>::infinity()};
    bool found = false;
    for (std::int64_t r = 0; r <= r_max; ++r) {
        if (found) {
            // Any site in ring r is at least (r - 1) cells away from the clamped query,
            // and clamping onto the grid box never increases distances.
            const double lb = static_cast<double>(r - 1) * cell_ - slack;
            if (lb > 0.0 && lb * lb > best.distance_sq) break;
        }
        for_ring(cx, cy, r, nx_, ny_, [&](std::int64_t x, std::int64_t y) {
            for (std::uint32_t i : bucket(x, y)) {
                const double d2 = distance_sq(query, sites_[i].pos);
                if (!found || d2 < best.distance_sq ||
                    (d2 == best.distance_sq && sites_[i].id < sites_[best.site].id)) {
                    best = {i, d2};
                    found = true;
                }
            }
        });
    }
    return best;
}

bool NearestIndex::any_within(const Vec2& query, double radius) const {
    if (sites_.empty()) return false;
    const double r2 = radius * radius;
    const std::int64_t cx = cell_x(query.x);
    const std::int64_t cy = cell_y(query.y);
    const std::int64_t r_max = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
    const double slack = 1e-9 * (cell_ + bounds_.diagonal());
    for (std::int64_t r = 0; r <= r_max; ++r) {
        const double lb = static_cast<double>(r - 1) * cell_ - slack;
        if (lb > radius) break;
        bool hit = false;
        for_ring(cx, cy, r, nx_, ny_, [&](std::int64_t x, std::int64_t y) {
            if (hit) return;
            for (std::uint32_t i : bucket(x, y))
                if (distance_sq(query, sites_[i].pos) <= r2) {
                    hit = true;
                    return;
                }
        });
        if (hit) return true;
    }
    return false;
}

}  // namespace focustree
