#pragma once

#include "focustree/dataset.hpp"
#include "focustree/sampler.hpp"

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace focustree {

// Artifact-defined sampler quality measures.

// Fraction of `points` within `radius` (inclusive) of some representative.
// Throws Error{InvalidArgs} unless radius > 0.
double coverage(std::span<const PlanarPoint> points, std::span<const PlanarPoint> representatives, double radius);

// Fraction of representative pairs closer than `threshold`; 0 with fewer than two.
// Throws Error{InvalidArgs} unless threshold > 0.
double redundancy(std::span<const PlanarPoint> representatives, double threshold);

// Uniform sample of min(count, n) points, in input order (algorithm R, mt19937_64).
std::vector<PlanarPoint> reservoir_sample(std::span<const PlanarPoint> points, std::size_t count, std::uint64_t seed);

struct MetricReport {
    std::string sampler;
    double k = 0.0;
    int alpha = 0;
    std::size_t n_reps = 0;
    double coverage = 0.0;
    double redundancy = 0.0;
    double runtime_ms = 0.0;
};

struct MetricsConfig {
    GridConfig grid;
    std::uint64_t seed = 0;
    double radius = 0.0;     // 0: use k
    double threshold = 0.0;  // 0: use alpha * k, or k when alpha is 0
};

// Samplers: "sadire" and "reservoir". The reservoir draws as many points as the
// grid sampler keeps. Throws Error{InvalidArgs} on an unknown sampler name.
std::vector<MetricReport> evaluate_samplers(const Dataset& dataset, const std::vector<std::string>& samplers,
                                            const MetricsConfig& config);

// Header `sampler,k,alpha,n_reps,coverage,redundancy,runtime_ms`, one row per report.
void write_metrics_csv(std::ostream& out, const std::vector<MetricReport>& reports);

}  // namespace focustree
