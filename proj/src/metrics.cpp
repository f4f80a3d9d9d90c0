#include "focustree/metrics.hpp"

#include "focustree/embedding_io.hpp"
#include "focustree/error.hpp"
#include "focustree/spatial_index.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace focustree {

double coverage(std::span<const PlanarPoint> points, std::span<const PlanarPoint> representatives, double radius) {
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgs, "coverage radius must be > 0");
    if (points.empty() || representatives.empty()) return 0.0;
    const NearestIndex index(representatives);
    std::size_t covered = 0;
    for (const auto& p : points)
        if (index.any_within(p.pos, radius)) ++covered;
    return static_cast<double>(covered) / static_cast<double>(points.size());
}

double redundancy(std::span<const PlanarPoint> representatives, double threshold) {
    if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgs, "redundancy threshold must be > 0");
    const std::size_t n = representatives.size();
    if (n < 2) return 0.0;
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (const auto& r : representatives) pts.push_back(r.pos);
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x < b.x; });
    const double t2 = threshold * threshold;
    std::size_t close = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n && pts[j].x - pts[i].x < threshold; ++j)
            if (distance_sq(pts[i], pts[j]) < t2) ++close;
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(close) / pairs;
}

std::vector<PlanarPoint> reservoir_sample(std::span<const PlanarPoint> points, std::size_t count, std::uint64_t seed) {
    const std::size_t take = std::min(count, points.size());
    std::vector<std::size_t> chosen(take);
    for (std::size_t i = 0; i < take; ++i) chosen[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = take; i < points.size() && take > 0; ++i) {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i)(rng);
        if (j < take) chosen[j] = i;
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<PlanarPoint> out;
    out.reserve(take);
    for (std::size_t i : chosen) out.push_back(points[i]);
    return out;
}

std::vector<MetricReport> evaluate_samplers(const Dataset& dataset, const std::vector<std::string>& samplers,
                                            const MetricsConfig& config) {
    config.grid.validate();
    for (const auto& name : samplers)
        if (name != "sadire" && name != "reservoir")
            throw Error(ErrorCode::InvalidArgs, "unknown sampler '" + name + "' (expected sadire or reservoir)");
    const double k = config.grid.cell_size;
    const double radius = config.radius > 0.0 ? config.radius : k;
    const double threshold =
        config.threshold > 0.0 ? config.threshold : (config.grid.window > 0 ? config.grid.window * k : k);
    const auto& points = dataset.planar();

    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    const RepresentativeSet reps = sample(points, config.grid);
    const double grid_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

    std::vector<MetricReport> out;
    for (const auto& name : samplers) {
        std::vector<PlanarPoint> picked;
        double ms = grid_ms;
        if (name == "sadire") {
            for (const auto& r : reps) picked.push_back({r.id, dataset.position(r.id)});
        } else {
            t0 = clock::now();
            picked = reservoir_sample(points, reps.size(), config.seed);
            ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        }
        out.push_back({name, k, config.grid.window, picked.size(), coverage(points, picked, radius),
                       redundancy(picked, threshold), ms});
    }
    return out;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricReport>& r) {
    out << "sampler,k,alpha,n_reps,coverage,redundancy,runtime_ms\n";
    for (const auto& m : r)
        out << m.sampler << ',' << format_double(m.k) << ',' << m.alpha << ',' << m.n_reps << ','
            << format_double(m.coverage) << ',' << format_double(m.redundancy) << ',' << format_double(m.runtime_ms)
            << '\n';
}

}  // namespace focustree
