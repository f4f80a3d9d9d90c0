#include "focustree/sampler.hpp"

#include "focustree/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace focustree {

void GridConfig::validate() const {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size))
        throw Error(ErrorCode::InvalidConfig, "cell size k must be a positive finite length");
    if (window < 0) throw Error(ErrorCode::InvalidConfig, "redundancy window alpha must be >= 0");
}

std::int64_t chebyshev(const CellKey& a, const CellKey& b) {
    return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

std::size_t Grid::total_density() const {
    std::size_t n = 0;
    for (const auto& [key, cell] : cells) n += cell.density();
    return n;
}

Grid build_grid(std::span<const PlanarPoint> points, const GridConfig& config) {
    config.validate();
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "cannot grid an empty point set");
    const Bounds b = bounds_of(points);
    Grid grid;
    grid.origin = {b.min_x, b.min_y};
    grid.cell_size = config.cell_size;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CellKey key{static_cast<std::int64_t>(std::floor((points[i].pos.y - b.min_y) / config.cell_size)),
                          static_cast<std::int64_t>(std::floor((points[i].pos.x - b.min_x) / config.cell_size))};
        grid.cells[key].members.push_back(i);
    }
    return grid;
}

namespace {

// Calls visit(key) for every occupied cell within Chebyshev `radius` of `center`
// (center included), choosing between window probing and a full scan.
template <typename Cells, typename F>
void for_each_near(const Cells& cells, const CellKey& center, std::int64_t radius, F&& visit) {
    const double side = 2.0 * static_cast<double>(radius) + 1.0;
    if (side * side <= static_cast<double>(cells.size())) {
        for (std::int64_t dr = -radius; dr <= radius; ++dr)
            for (std::int64_t dc = -radius; dc <= radius; ++dc) {
                const CellKey key{center.row + dr, center.col + dc};
                if (cells.count(key)) visit(key);
            }
    } else {
        for (const auto& entry : cells)
            if (chebyshev(entry.first, center) <= radius) visit(entry.first);
    }
}

}  // namespace

Grid remove_redundant(const Grid& grid, int window) {
    if (window < 0) throw Error(ErrorCode::InvalidConfig, "redundancy window alpha must be >= 0");
    if (window == 0) return grid;

    enum class State { Unvisited, Kept, Suppressed };
    std::map<CellKey, State> state;
    for (const auto& entry : grid.cells) state.emplace(entry.first, State::Unvisited);

    std::map<CellKey, bool> kept;  // used as an ordered set
    for (auto& [key, s] : state) {
        if (s != State::Unvisited) continue;
        s = State::Kept;
        kept.emplace(key, true);
        for_each_near(state, key, window, [&](const CellKey& other) {
            auto& so = state[other];
            if (so == State::Unvisited) so = State::Suppressed;
        });
    }

    Grid out;
    out.origin = grid.origin;
    out.cell_size = grid.cell_size;
    for (const auto& [key, flag] : kept) out.cells.emplace(key, grid.cells.at(key));

    // The suppressing cell lies within Chebyshev `window`, hence within Euclidean
    // window*sqrt(2); no kept cell outside that Chebyshev radius can be closer.
    const auto search = static_cast<std::int64_t>(std::floor(window * std::sqrt(2.0))) + 1;
    for (const auto& [key, cell] : grid.cells) {
        if (state.at(key) != State::Suppressed) continue;
        CellKey best{};
        std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
        for_each_near(kept, key, search, [&](const CellKey& k) {
            const std::int64_t dr = k.row - key.row, dc = k.col - key.col;
            const std::int64_t d2 = dr * dr + dc * dc;
            if (d2 < best_d2 || (d2 == best_d2 && k < best)) {
                best_d2 = d2;
                best = k;
            }
        });
        auto& target = out.cells.at(best).absorbed;
        target.insert(target.end(), cell.members.begin(), cell.members.end());
        target.insert(target.end(), cell.absorbed.begin(), cell.absorbed.end());
    }
    for (auto& [key, cell] : out.cells) std::sort(cell.absorbed.begin(), cell.absorbed.end());
    return out;
}

std::size_t exact_medoid(std::span<const PlanarPoint> points, std::span<const std::size_t> candidates) {
    if (candidates.empty()) throw Error(ErrorCode::EmptyInput, "medoid of an empty set");
    const std::size_t m = candidates.size();
    if (m == 1) return candidates[0];

    // Evaluate likely winners first: order by distance to the centroid.
    Vec2 centroid;
    for (std::size_t c : candidates) centroid = centroid + points[c].pos;
    centroid = centroid * (1.0 / static_cast<double>(m));
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> to_centroid(m);
    for (std::size_t i = 0; i < m; ++i) to_centroid[i] = distance_sq(points[candidates[i]].pos, centroid);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return to_centroid[a] < to_centroid[b] || (to_centroid[a] == to_centroid[b] && a < b);
    });

    std::vector<double> lower(m, 0.0);
    std::vector<double> dist(m);
    double best_energy = std::numeric_limits<double>::infinity();
    std::size_t best = candidates[0];
    const double md = static_cast<double>(m);
    for (std::size_t i : order) {
        // lower[i] is a valid bound on i's energy; the relative slack keeps exact
        // ties (and rounding-level near ties) in play so the id tie-break decides.
        if (lower[i] > best_energy + 1e-9 * best_energy) continue;
        const Vec2 pi = points[candidates[i]].pos;
        double energy = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            dist[j] = distance(pi, points[candidates[j]].pos);
            energy += dist[j];
        }
        const PointId id = points[candidates[i]].id;
        if (energy < best_energy || (energy == best_energy && id < points[best].id)) {
            best_energy = energy;
            best = candidates[i];
        }
        // E(j) >= |E(i) - m * d(i, j)| by the triangle inequality.
        for (std::size_t j = 0; j < m; ++j) lower[j] = std::max(lower[j], std::abs(energy - md * dist[j]));
    }
    return best;
}

RepresentativeSet select_medoids(const Grid& grid, std::span<const PlanarPoint> points) {
    RepresentativeSet reps;
    reps.reserve(grid.cells.size());
    for (const auto& [key, cell] : grid.cells) {
        const std::size_t medoid = exact_medoid(points, cell.members);
        reps.push_back({points[medoid].id, cell.density()});
    }
    return reps;
}

RepresentativeSet sample(std::span<const PlanarPoint> points, const GridConfig& config) {
    const Grid grid = build_grid(points, config);
    return select_medoids(remove_redundant(grid, config.window), points);
}

}  // namespace focustree
